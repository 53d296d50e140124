#pragma once

#include <map>
#include <string>
#include <vector>

#include "tjurina/rational.hpp"
#include "tjurina/series.hpp"

namespace tjurina {

/* Polynomial in n ambient variables over Q, dense-exponent sparse-term.
 * Exponent vectors always have length nvars; the term map keeps the
 * representation canonical (no zero coefficients). */
class MPoly {
public:
    using Expt = std::vector<unsigned>;

    explicit MPoly(int nvars = 0) : n_(nvars) {}
    static MPoly constant(int nvars, Rat c);
    static MPoly variable(int nvars, int idx);

    int nvars() const { return n_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<Expt, Rat>& terms() const { return t_; }
    long total_degree() const;  // -1 for the zero polynomial
    Rat coeff(const Expt& e) const;
    void add_term(const Expt& e, const Rat& c);

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    bool operator==(const MPoly& o) const { return n_ == o.n_ && t_ == o.t_; }

    MPoly scaled(const Rat& k) const;
    MPoly pow(unsigned long e) const;
    MPoly partial(int var) const;

    // substitute series for every variable (args.size() == nvars)
    Series eval_series(const std::vector<Series>& args) const;
    // substitute polynomials (linear coordinate changes and the like)
    MPoly eval_mpoly(const std::vector<MPoly>& args) const;

    Rat eval_point(const std::vector<Rat>& xs) const;

    std::string str(const std::vector<std::string>& names) const;

private:
    int n_;
    std::map<Expt, Rat> t_;
};

}  // namespace tjurina
