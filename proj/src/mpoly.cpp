#include "tjurina/mpoly.hpp"

#include <numeric>
#include <sstream>

#include "tjurina/errors.hpp"

namespace tjurina {

MPoly MPoly::constant(int nvars, Rat c) {
    MPoly p(nvars);
    p.add_term(Expt(nvars, 0), c);
    return p;
}

MPoly MPoly::variable(int nvars, int idx) {
    MPoly p(nvars);
    Expt e(nvars, 0);
    e[idx] = 1;
    p.add_term(e, Rat(1));
    return p;
}

long MPoly::total_degree() const {
    long d = -1;
    for (const auto& [e, c] : t_)
        d = std::max(d, static_cast<long>(std::accumulate(e.begin(), e.end(), 0u)));
    return d;
}

Rat MPoly::coeff(const Expt& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rat(0) : it->second;
}

void MPoly::add_term(const Expt& e, const Rat& c) {
    if (rat_is_zero(c)) return;
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (rat_is_zero(it->second)) t_.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [e, c] : o.t_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r(n_);
    for (const auto& [ea, ca] : t_)
        for (const auto& [eb, cb] : o.t_) {
            Expt e = ea;
            for (int i = 0; i < n_; ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MPoly MPoly::scaled(const Rat& k) const {
    MPoly r(n_);
    if (rat_is_zero(k)) return r;
    r = *this;
    for (auto& [e, c] : r.t_) c *= k;
    return r;
}

MPoly MPoly::pow(unsigned long e) const {
    MPoly acc = constant(n_, Rat(1)), b = *this;
    while (e) {
        if (e & 1) acc = acc * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return acc;
}

MPoly MPoly::partial(int var) const {
    MPoly r(n_);
    for (const auto& [e, c] : t_) {
        if (e[var] == 0) continue;
        Expt d = e;
        d[var] -= 1;
        r.add_term(d, c * rat_from_long(e[var]));
    }
    return r;
}

Series MPoly::eval_series(const std::vector<Series>& args) const {
    if (static_cast<int>(args.size()) != n_) throw math_error("eval_series arity mismatch");
    // per-variable power cache; exponents repeat heavily across terms
    std::vector<std::map<unsigned, Series>> cache(n_);
    auto power = [&](int v, unsigned e) -> const Series& {
        auto it = cache[v].find(e);
        if (it != cache[v].end()) return it->second;
        return cache[v].emplace(e, args[v].pow(e)).first->second;
    };
    Series acc;
    for (const auto& [e, c] : t_) {
        Series term{Rat(1)};
        for (int v = 0; v < n_; ++v)
            if (e[v]) term *= power(v, e[v]);
        acc += term.scaled(c);
    }
    return acc;
}

MPoly MPoly::eval_mpoly(const std::vector<MPoly>& args) const {
    if (static_cast<int>(args.size()) != n_) throw math_error("eval_mpoly arity mismatch");
    int m = args.empty() ? n_ : args[0].nvars();
    MPoly acc(m);
    for (const auto& [e, c] : t_) {
        MPoly term = MPoly::constant(m, c);
        for (int v = 0; v < n_; ++v)
            if (e[v]) term *= args[v].pow(e[v]);
        acc += term;
    }
    return acc;
}

Rat MPoly::eval_point(const std::vector<Rat>& xs) const {
    Rat acc(0);
    for (const auto& [e, c] : t_) {
        Rat term = c;
        for (int v = 0; v < n_; ++v)
            if (e[v]) term *= rat_pow(xs[v], e[v]);
        acc += term;
    }
    return acc;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        if (first && sgn(c) < 0) os << "-";
        first = false;
        Rat a = abs(c);
        bool any = false;
        std::ostringstream mono;
        for (int v = 0; v < n_; ++v) {
            if (!e[v]) continue;
            if (any) mono << "*";
            any = true;
            mono << names[v];
            if (e[v] > 1) mono << "^" << e[v];
        }
        if (!any)
            os << a.get_str();
        else {
            if (a != 1) os << a.get_str() << "*";
            os << mono.str();
        }
    }
    return os.str();
}

}  // namespace tjurina
