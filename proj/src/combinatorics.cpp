#include "tjurina/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "tjurina/errors.hpp"

namespace tjurina {

namespace {

// boolean grid over prod_i [0, box_i + 1]
class BoolGrid {
public:
    explicit BoolGrid(const ValVec& box) : box_(box) {
        size_t cells = 1;
        stride_.assign(box.size(), 1);
        for (size_t i = box.size(); i-- > 0;) {
            stride_[i] = cells;
            cells *= static_cast<size_t>(box[i]) + 2;
        }
        cells_.assign(cells, 0);
    }
    size_t index(const ValVec& g) const {
        size_t idx = 0;
        for (size_t i = 0; i < box_.size(); ++i) idx += static_cast<size_t>(g[i]) * stride_[i];
        return idx;
    }
    void mark(const ValVec& g) { cells_[index(g)] = 1; }
    bool at(const ValVec& g) const { return cells_[index(g)] != 0; }

    // cell |= cell one step up along axis j, swept from the top down
    void suffix_or(int j) {
        const size_t st = stride_[static_cast<size_t>(j)];
        const size_t extent = static_cast<size_t>(box_[static_cast<size_t>(j)]) + 2;
        const size_t block = st * extent;
        for (size_t base = 0; base < cells_.size(); base += block)
            for (size_t layer = extent - 1; layer-- > 0;)
                for (size_t k = 0; k < st; ++k) {
                    size_t idx = base + layer * st + k;
                    cells_[idx] = cells_[idx] | cells_[idx + st];
                }
    }

private:
    ValVec box_;
    std::vector<size_t> stride_;
    std::vector<char> cells_;
};

ValVec clip_to_grid(const ValVec& m, const ValVec& box) {
    ValVec q(m.size());
    for (size_t i = 0; i < m.size(); ++i) q[i] = is_top(m[i]) ? box[i] + 1 : m[i];
    return q;
}

}  // namespace

std::vector<ValVec> fiber(const ValueSet& E, const std::vector<int>& J, const ValVec& alpha) {
    std::vector<char> inJ(alpha.size(), 0);
    for (int j : J) inJ[static_cast<size_t>(j)] = 1;
    std::vector<ValVec> out;
    for (const auto& b : E.members) {
        bool ok = true;
        for (size_t i = 0; ok && i < alpha.size(); ++i) {
            if (inJ[i])
                ok = b[i] == alpha[i];
            else
                ok = b[i] > alpha[i];
        }
        if (ok) out.push_back(b);
    }
    return out;
}

Maximals maximal_points(const ValueSet& E) {
    Maximals out;
    const int r = E.r();
    if (r < 2) return out;
    const ValVec lo = E.inf();
    const ValVec c = E.conductor();
    for (int i = 0; i < r; ++i)
        if (lo[static_cast<size_t>(i)] >= c[static_cast<size_t>(i)]) return out;

    /* grid[mask] answers: does E contain a point equal to the query on the
     * axes of mask and at least the query elsewhere? */
    const unsigned full = (1u << r) - 1;
    std::vector<BoolGrid> grid;
    grid.reserve(full);
    for (unsigned mask = 0; mask < full; ++mask) {
        grid.emplace_back(E.box);
        if (mask == 0) continue;
        for (const auto& m : E.members) grid.back().mark(clip_to_grid(m, E.box));
        for (int j = 0; j < r; ++j)
            if (!(mask & (1u << j))) grid.back().suffix_or(j);
    }

    ValVec a = lo;
    for (;;) {
        // maximal points are members with an empty fiber
        bool maximal = E.contains(a);
        for (int i = 0; maximal && i < r; ++i) {
            ValVec q = a;
            for (int j = 0; j < r; ++j)
                if (j != i) ++q[static_cast<size_t>(j)];
            if (grid[1u << i].at(q)) maximal = false;
        }
        if (maximal) {
            out.M.push_back(a);
            bool rm = true, am = true;
            for (unsigned mask = 1; mask < full; ++mask) {
                if (std::popcount(mask) < 2) continue;
                ValVec q = a;
                for (int j = 0; j < r; ++j)
                    if (!(mask & (1u << j))) ++q[static_cast<size_t>(j)];
                if (grid[mask].at(q))
                    am = false;
                else
                    rm = false;
            }
            if (rm) out.RM.push_back(a);
            if (am) out.AM.push_back(a);
        }
        int i = r - 1;
        for (; i >= 0; --i) {
            if (a[static_cast<size_t>(i)] + 1 < c[static_cast<size_t>(i)]) {
                ++a[static_cast<size_t>(i)];
                break;
            }
            a[static_cast<size_t>(i)] = lo[static_cast<size_t>(i)];
        }
        if (i < 0) break;
    }
    return out;
}

std::vector<long> theta(const ValueSet& E) {
    const int r = E.r();
    std::vector<long> th(static_cast<size_t>(r), 0);
    for (int i = 1; i < r; ++i) {
        std::set<long> vals;
        for (unsigned mask = 1; mask < (1u << (i + 1)); ++mask) {
            if (!(mask & (1u << i)) || std::popcount(mask) < 2) continue;
            std::vector<int> J;
            for (int b = 0; b <= i; ++b)
                if (mask & (1u << b)) J.push_back(b);
            Maximals mm = maximal_points(E.project(J));
            for (const auto& m : mm.RM) vals.insert(m.back());
        }
        th[static_cast<size_t>(i)] = static_cast<long>(vals.size());
    }
    return th;
}

long quotient_length(const ValueSet& E, const ValVec& gamma) {
    if (gamma.size() != E.box.size())
        throw math_error("quotient point has the wrong number of coordinates");
    for (size_t i = 0; i < gamma.size(); ++i)
        if (gamma[i] < 0 || gamma[i] > E.box[i] + 1)
            throw math_error("quotient point lies outside the window");
    const ValVec c = E.conductor();
    for (size_t i = 0; i < gamma.size(); ++i)
        if (gamma[i] < c[i])
            throw gamma_too_small("length formula needs a point at or above the conductor");
    long len = 0;
    for (int i = 0; i < E.r(); ++i) {
        std::vector<long> ax = E.axis(i);
        len += std::lower_bound(ax.begin(), ax.end(), gamma[static_cast<size_t>(i)]) - ax.begin();
    }
    for (long t : theta(E)) len -= t;
    return len;
}

}  // namespace tjurina
