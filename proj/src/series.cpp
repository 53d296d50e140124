#include "tjurina/series.hpp"

#include <sstream>

#include "tjurina/errors.hpp"

namespace tjurina {

long sat_add(long a, long b) {
    if (a >= Series::kExact || b >= Series::kExact) return Series::kExact;
    long s = a + b;
    return s >= Series::kExact ? Series::kExact : s;
}

Series::Series(Rat c, long trunc) : trunc_(trunc) {
    if (!rat_is_zero(c)) c_[0] = std::move(c);
    strip();
}

Series Series::monomial(long deg, Rat c, long trunc) {
    Series s;
    s.trunc_ = trunc;
    if (!rat_is_zero(c) && deg <= trunc) s.c_[deg] = std::move(c);
    return s;
}

void Series::strip() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (rat_is_zero(it->second) || it->first > trunc_)
            it = c_.erase(it);
        else
            ++it;
    }
}

Rat Series::coeff(long d) const {
    if (d > trunc_)
        throw truncation_too_small("coefficient of t^" + std::to_string(d) +
                                   " requested beyond truncation " + std::to_string(trunc_));
    auto it = c_.find(d);
    return it == c_.end() ? Rat(0) : it->second;
}

void Series::require_trunc(long n) const {
    if (trunc_ < n)
        throw truncation_too_small("series known only to O(t^" + std::to_string(trunc_ + 1) +
                                   "), need degree " + std::to_string(n));
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& [d, c] : r.c_) c = -c;
    return r;
}

Series Series::operator+(const Series& o) const {
    Series r;
    r.trunc_ = std::min(trunc_, o.trunc_);
    r.c_ = c_;
    for (const auto& [d, c] : o.c_) {
        auto [it, fresh] = r.c_.try_emplace(d, c);
        if (!fresh) it->second += c;
    }
    r.strip();
    return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
    /* The first degree we cannot vouch for comes from an unknown tail of one
     * factor times the lowest possible term of the other. */
    auto min_possible = [](const Series& s) {
        return s.c_.empty() ? sat_add(s.trunc_, 1) : s.ord();
    };
    long unk = std::min(sat_add(sat_add(trunc_, 1), min_possible(o)),
                        sat_add(sat_add(o.trunc_, 1), min_possible(*this)));
    Series r;
    r.trunc_ = unk >= kExact ? kExact : unk - 1;
    for (const auto& [da, ca] : c_) {
        if (da > r.trunc_) break;
        for (const auto& [db, cb] : o.c_) {
            long d = da + db;
            if (d > r.trunc_) break;
            auto [it, fresh] = r.c_.try_emplace(d, ca * cb);
            if (!fresh) it->second += ca * cb;
        }
    }
    r.strip();
    return r;
}

Series Series::scaled(const Rat& k) const {
    Series r = *this;
    if (rat_is_zero(k)) {
        r.c_.clear();
        return r;
    }
    for (auto& [d, c] : r.c_) c *= k;
    return r;
}

Series Series::derivative() const {
    Series r;
    r.trunc_ = exact() ? kExact : trunc_ - 1;
    for (const auto& [d, c] : c_) {
        if (d == 0) continue;
        r.c_[d - 1] = c * rat_from_long(d);
    }
    r.strip();
    return r;
}

Series Series::shifted(long k) const {
    Series r;
    r.trunc_ = sat_add(trunc_, k);
    for (const auto& [d, c] : c_) r.c_[d + k] = c;
    return r;
}

Series Series::truncated(long n) const {
    Series r = *this;
    r.trunc_ = std::min(trunc_, n);
    r.strip();
    return r;
}

Series Series::pow(unsigned long e) const {
    Series acc(Rat(1)), b = *this;
    while (e) {
        if (e & 1) acc = acc * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return acc;
}

static long sat_mul(long a, long b) {
    if (a >= Series::kExact || b >= Series::kExact) return Series::kExact;
    if (b != 0 && a > Series::kExact / b) return Series::kExact;
    return a * b;
}

Series Series::compose(const Series& u) const {
    if (!u.c_.empty() && u.ord() < 1) throw math_error("composition needs ord >= 1");
    // lowest degree any (possibly unknown) term of u can have
    long m = u.c_.empty() ? sat_add(u.trunc_, 1) : u.ord();

    long tr = kExact;
    // tail of *this beyond trunc enters at degree >= (trunc+1)*m
    if (!exact()) {
        long first_unknown = sat_mul(sat_add(trunc_, 1), m);
        tr = std::min(tr, first_unknown >= kExact ? kExact : first_unknown - 1);
    }
    // tail of u perturbs every u^k (k >= 1) from degree u.trunc+1 on
    if (!u.exact()) tr = std::min(tr, u.trunc_);

    Series r = Series::zero_truncated(tr);
    Series ut = u.truncated(tr);
    Series upow(Rat(1));
    long kprev = 0;
    for (const auto& [k, c] : c_) {
        if (k > 0 && sat_mul(k, m) > tr) break;  // terms are ascending; rest invisible
        upow = (upow * ut.pow(static_cast<unsigned long>(k - kprev))).truncated(tr);
        kprev = k;
        r += upow.scaled(c);
    }
    return r;
}

void Series::set_coeff(long d, const Rat& c) {
    if (d > trunc_) return;
    if (rat_is_zero(c))
        c_.erase(d);
    else
        c_[d] = c;
}

std::string Series::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : c_) {
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        if (first && sgn(c) < 0) os << "-";
        first = false;
        Rat a = abs(c);
        if (d == 0)
            os << a.get_str();
        else {
            if (a != 1) os << a.get_str() << "*";
            os << "t";
            if (d != 1) os << "^" << d;
        }
    }
    if (first) os << "0";
    if (!exact()) os << " + O(t^" << trunc_ + 1 << ")";
    return os.str();
}

}  // namespace tjurina
