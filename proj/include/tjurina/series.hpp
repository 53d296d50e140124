#pragma once

#include <limits>
#include <map>
#include <string>

#include "tjurina/rational.hpp"

namespace tjurina {

/* Truncated power series in one local parameter t over Q.
 *
 * Coefficients of degree <= trunc are known exactly (absent = zero);
 * nothing is asserted beyond trunc. trunc == kExact means the series is a
 * polynomial known in full, which is what branch parametrizations in the
 * test corpus look like and what makes "is this exactly zero" decidable. */
class Series {
public:
    static constexpr long kExact = std::numeric_limits<long>::max() / 4;
    // ord() result when no nonzero coefficient exists within trunc
    static constexpr long kOrdTop = std::numeric_limits<long>::max() / 2;

    Series() : trunc_(kExact) {}
    explicit Series(Rat c, long trunc = kExact);
    static Series monomial(long deg, Rat c = Rat(1), long trunc = kExact);
    static Series zero_truncated(long trunc) { return Series(Rat(0), trunc); }

    long trunc() const { return trunc_; }
    bool exact() const { return trunc_ == kExact; }
    const std::map<long, Rat>& terms() const { return c_; }

    // smallest degree with a nonzero known coefficient, kOrdTop if none
    long ord() const { return c_.empty() ? kOrdTop : c_.begin()->first; }
    bool known_zero() const { return c_.empty() && exact(); }
    bool is_zero_to_trunc() const { return c_.empty(); }

    // coefficient at degree d; zero when absent; throws past the truncation
    Rat coeff(long d) const;
    // asserts that all degrees <= n are known
    void require_trunc(long n) const;

    Series operator-() const;
    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator*(const Series& o) const;
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }
    bool operator==(const Series& o) const { return trunc_ == o.trunc_ && c_ == o.c_; }

    Series scaled(const Rat& k) const;
    Series derivative() const;
    Series shifted(long k) const;  // multiply by t^k (k >= 0)
    Series truncated(long n) const;
    // substitution s(u(t)); u must have ord >= 1
    Series compose(const Series& u) const;
    Series pow(unsigned long e) const;

    void set_coeff(long d, const Rat& c);

    std::string str() const;

private:
    std::map<long, Rat> c_;
    long trunc_;

    void strip();
    friend Series series_sum_shifted(const Series&, const Series&, long);
};

// saturating helpers used by truncation bookkeeping
long sat_add(long a, long b);

}  // namespace tjurina
