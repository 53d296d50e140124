#pragma once

#include <utility>
#include <vector>

#include "tjurina/series.hpp"
#include "tjurina/value_vec.hpp"

namespace tjurina {

/* Set of value vectors of a finitely generated module inside the product of
 * branch parameter rings, observed through a finite window. Entries equal to
 * kTop mark coordinates clipped at the window (vanishing or beyond box). */
struct ValueSet {
    ValVec box;                    // inclusive per-branch degree caps
    std::vector<ValVec> members;   // sorted lexicographically

    int r() const { return static_cast<int>(box.size()); }
    bool contains(const ValVec& v) const;
    ValVec inf() const;            // per-axis minimum over finite entries
    // minimal gamma with every finite lattice point above it a member,
    // certified across the window; throws no_conductor_in_window
    ValVec conductor() const;
    std::vector<long> axis(int i) const;   // sorted distinct finite i-th coords
    long axis_conductor(int i) const;
    long axis_gaps(int i) const;           // #([0, axis_conductor) minus axis)
    ValueSet project(const std::vector<int>& J) const;
};

/* Dimension table over the grid prod_i [0, B_i+1]: cell gamma holds the
 * dimension of the window subspace vanishing below gamma on every branch. */
class DimTable {
public:
    explicit DimTable(const ValVec& box);
    long& at(const ValVec& g) { return cells_[index(g)]; }
    long at(const ValVec& g) const { return cells_[index(g)]; }
    const ValVec& box() const { return box_; }

private:
    size_t index(const ValVec& g) const;
    ValVec box_;
    std::vector<size_t> stride_;
    std::vector<long> cells_;
    friend class WindowSpan;
};

/* Echelonized sparse row space of window vectors. Columns are blocked by
 * branch, last branch first, degrees ascending inside a block; this order is
 * what lets the dimension sweep recurse by truncating row tails. */
class WindowSpan {
public:
    using Row = std::vector<std::pair<long, Rat>>;  // sorted by column

    explicit WindowSpan(const ValVec& box);
    long col(int branch, long deg) const { return offset_[branch] + deg; }
    const ValVec& box() const { return box_; }
    const std::vector<Row>& rows() const { return rows_; }
    size_t dim() const { return rows_.size(); }

    // reduce against the current leads, then keep if independent
    void insert(Row row);
    // dimension of the subspace vanishing below gamma (one-off query)
    long subspace_dim_at(const ValVec& gamma) const;
    // the full table in one sweep
    DimTable dimension_table() const;

private:
    ValVec box_;
    std::vector<long> offset_;
    std::vector<Row> rows_;
};

// window vector of an element given per-branch series
WindowSpan::Row window_row(const WindowSpan& span, const std::vector<Series>& el);

/* Window span of the module sum_g (k[mults] * g): every product of a
 * monomial in the multipliers with a generator that is visible in the
 * window. mults[l][i], gens[g][i] = image on branch i. */
WindowSpan build_window_span(const std::vector<std::vector<Series>>& mults,
                             const std::vector<std::vector<Series>>& gens,
                             const ValVec& box);

// value vectors (membership by dimension drops); clipped ones carry kTop
std::vector<ValVec> table_members(const DimTable& t);

ValueSet compute_value_set(const std::vector<std::vector<Series>>& mults,
                           const std::vector<std::vector<Series>>& gens,
                           const ValVec& box);

}  // namespace tjurina
