#include "tjurina/value_sets.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>

#include "tjurina/errors.hpp"

namespace tjurina {

namespace {

// binary search a sorted sparse row for a column, nullptr if absent
const Rat* row_coeff(const WindowSpan::Row& row, long c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const std::pair<long, Rat>& e, long col) { return e.first < col; });
    if (it == row.end() || it->first != c) return nullptr;
    return &it->second;
}

// dst -= q * src, sparse merge; entries that cancel are dropped
void row_axpy(WindowSpan::Row& dst, const Rat& q, const WindowSpan::Row& src) {
    WindowSpan::Row out;
    out.reserve(dst.size() + src.size());
    size_t a = 0, b = 0;
    while (a < dst.size() || b < src.size()) {
        if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
            out.push_back(dst[a++]);
        } else if (a == dst.size() || src[b].first < dst[a].first) {
            Rat v = -q * src[b].second;
            if (!rat_is_zero(v)) out.emplace_back(src[b].first, v);
            ++b;
        } else {
            Rat v = dst[a].second - q * src[b].second;
            if (!rat_is_zero(v)) out.emplace_back(dst[a].first, v);
            ++a;
            ++b;
        }
    }
    dst = std::move(out);
}

/* Impose "coefficient at column c is zero" on an echelonized set: subtract a
 * multiple of the row with the largest lead among those hitting c (so every
 * survivor keeps its lead), then drop that row. Returns true if the
 * dimension actually fell. */
bool eliminate_column(std::vector<WindowSpan::Row>& rows, long c) {
    size_t pivot = rows.size();
    for (size_t i = 0; i < rows.size(); ++i) {
        if (!row_coeff(rows[i], c)) continue;
        if (pivot == rows.size() || rows[i].front().first > rows[pivot].front().first)
            pivot = i;
    }
    if (pivot == rows.size()) return false;
    WindowSpan::Row piv = std::move(rows[pivot]);
    rows.erase(rows.begin() + static_cast<long>(pivot));
    const Rat& pc = *row_coeff(piv, c);
    for (auto& row : rows) {
        const Rat* rc = row_coeff(row, c);
        if (rc) row_axpy(row, *rc / pc, piv);
    }
    return true;
}

}  // namespace

bool ValueSet::contains(const ValVec& v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

ValVec ValueSet::inf() const {
    ValVec lo(box.size(), kTop);
    for (const auto& m : members)
        for (size_t i = 0; i < lo.size(); ++i)
            if (!is_top(m[i]) && m[i] < lo[i]) lo[i] = m[i];
    for (long v : lo)
        if (is_top(v)) throw math_error("value set has an axis with no finite value");
    return lo;
}

std::vector<long> ValueSet::axis(int i) const {
    std::vector<long> vals;
    for (const auto& m : members)
        if (!is_top(m[static_cast<size_t>(i)])) vals.push_back(m[static_cast<size_t>(i)]);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

long ValueSet::axis_conductor(int i) const {
    std::vector<char> seen(static_cast<size_t>(box[static_cast<size_t>(i)]) + 1, 0);
    for (long v : axis(i))
        if (v <= box[static_cast<size_t>(i)]) seen[static_cast<size_t>(v)] = 1;
    long c = 0;
    for (long d = box[static_cast<size_t>(i)]; d >= 0; --d)
        if (!seen[static_cast<size_t>(d)]) {
            c = d + 1;
            break;
        }
    if (c > box[static_cast<size_t>(i)])
        throw no_conductor_in_window("axis " + std::to_string(i + 1) +
                                     " is not eventually full inside the window");
    return c;
}

long ValueSet::axis_gaps(int i) const {
    long c = axis_conductor(i);
    std::vector<char> seen(static_cast<size_t>(c), 0);
    for (long v : axis(i))
        if (v < c) seen[static_cast<size_t>(v)] = 1;
    long g = 0;
    for (long d = 0; d < c; ++d)
        if (!seen[static_cast<size_t>(d)]) ++g;
    return g;
}

ValVec ValueSet::conductor() const {
    const int n = r();
    // mark exact members on the grid [0, box]
    std::vector<size_t> stride(static_cast<size_t>(n));
    size_t cells = 1;
    for (int i = n - 1; i >= 0; --i) {
        stride[static_cast<size_t>(i)] = cells;
        cells *= static_cast<size_t>(box[static_cast<size_t>(i)]) + 1;
    }
    std::vector<char> full(cells, 0);
    for (const auto& m : members) {
        size_t idx = 0;
        bool exact = true;
        for (int i = 0; i < n; ++i) {
            long v = m[static_cast<size_t>(i)];
            if (is_top(v) || v > box[static_cast<size_t>(i)]) {
                exact = false;
                break;
            }
            idx += static_cast<size_t>(v) * stride[static_cast<size_t>(i)];
        }
        if (exact) full[idx] = 1;
    }
    // full(g) := every lattice point of [g, box] is a member
    ValVec g(static_cast<size_t>(n));
    for (size_t idx = cells; idx-- > 0;) {
        if (!full[idx]) continue;
        size_t t = idx;
        for (int i = 0; i < n; ++i) {
            size_t st = stride[static_cast<size_t>(i)];
            g[static_cast<size_t>(i)] = static_cast<long>(t / st);
            t %= st;
        }
        for (int i = 0; i < n && full[idx]; ++i)
            if (g[static_cast<size_t>(i)] < box[static_cast<size_t>(i)] &&
                !full[idx + stride[static_cast<size_t>(i)]])
                full[idx] = 0;
    }
    ValVec c(static_cast<size_t>(n), kTop);
    bool any = false;
    for (size_t idx = 0; idx < cells; ++idx) {
        if (!full[idx]) continue;
        any = true;
        size_t t = idx;
        for (int i = 0; i < n; ++i) {
            size_t st = stride[static_cast<size_t>(i)];
            long v = static_cast<long>(t / st);
            t %= st;
            if (v < c[static_cast<size_t>(i)]) c[static_cast<size_t>(i)] = v;
        }
    }
    if (!any)
        throw no_conductor_in_window("no corner of the window is entirely filled");
    // the componentwise minimum must itself be a filled corner
    size_t cidx = 0;
    for (int i = 0; i < n; ++i)
        cidx += static_cast<size_t>(c[static_cast<size_t>(i)]) * stride[static_cast<size_t>(i)];
    if (!full[cidx])
        throw no_conductor_in_window("filled corners have no common minimum in the window");
    return c;
}

ValueSet ValueSet::project(const std::vector<int>& J) const {
    ValueSet out;
    out.box.reserve(J.size());
    for (int j : J) out.box.push_back(box[static_cast<size_t>(j)]);
    for (const auto& m : members) {
        ValVec p;
        p.reserve(J.size());
        bool finite = false;
        for (int j : J) {
            p.push_back(m[static_cast<size_t>(j)]);
            if (!is_top(p.back())) finite = true;
        }
        if (finite) out.members.push_back(std::move(p));
    }
    std::sort(out.members.begin(), out.members.end());
    out.members.erase(std::unique(out.members.begin(), out.members.end()), out.members.end());
    return out;
}

DimTable::DimTable(const ValVec& box) : box_(box) {
    const size_t n = box.size();
    stride_.assign(n, 1);
    size_t cells = 1;
    for (size_t i = n; i-- > 0;) {
        stride_[i] = cells;
        cells *= static_cast<size_t>(box[i]) + 2;
    }
    cells_.assign(cells, 0);
}

size_t DimTable::index(const ValVec& g) const {
    size_t idx = 0;
    for (size_t i = 0; i < box_.size(); ++i) idx += static_cast<size_t>(g[i]) * stride_[i];
    return idx;
}

WindowSpan::WindowSpan(const ValVec& box) : box_(box) {
    const size_t n = box.size();
    offset_.assign(n, 0);
    long acc = 0;
    for (size_t i = n; i-- > 0;) {
        offset_[i] = acc;
        acc += box[i] + 1;
    }
}

void WindowSpan::insert(Row row) {
    while (!row.empty()) {
        long lead = row.front().first;
        auto it = std::lower_bound(rows_.begin(), rows_.end(), lead,
                                   [](const Row& r, long l) { return r.front().first < l; });
        if (it == rows_.end() || it->front().first != lead) {
            rows_.insert(it, std::move(row));
            return;
        }
        row_axpy(row, row.front().second / it->front().second, *it);
    }
}

long WindowSpan::subspace_dim_at(const ValVec& gamma) const {
    std::vector<Row> work = rows_;
    for (size_t i = 0; i < box_.size(); ++i)
        for (long d = 0; d < gamma[i]; ++d) eliminate_column(work, col(static_cast<int>(i), d));
    return static_cast<long>(work.size());
}

namespace {

/* Depth-first dimension sweep. At level l every constraint for branches
 * before l has been consumed, `rows` only touches columns of branches >= l,
 * and `extra` rows are known to survive whatever comes. The last block sits
 * at offset 0, so at the deepest level the lead of a row is its degree and a
 * whole table line is a suffix count of leads. */
void sweep(const WindowSpan& span, int l, std::vector<WindowSpan::Row> rows, long extra,
           const ValVec& base, DimTable& table) {
    const ValVec& box = span.box();
    const int r = static_cast<int>(box.size());
    ValVec g = base;
    if (l == r - 1) {
        std::vector<long> suffix(static_cast<size_t>(box[static_cast<size_t>(l)]) + 3, 0);
        for (const auto& row : rows) ++suffix[static_cast<size_t>(row.front().first)];
        for (size_t d = suffix.size() - 1; d-- > 0;) suffix[d] += suffix[d + 1];
        for (long gl = 0; gl <= box[static_cast<size_t>(l)] + 1; ++gl) {
            g[static_cast<size_t>(l)] = gl;
            table.at(g) = extra + suffix[static_cast<size_t>(gl)];
        }
        return;
    }
    const long off = span.col(l, 0);
    for (long gl = 0; gl <= box[static_cast<size_t>(l)] + 1; ++gl) {
        g[static_cast<size_t>(l)] = gl;
        // rows with lead in block l vanish on every later branch
        long pure = 0;
        if (l + 1 == r - 1) {
            // next block is the last one: read its profile in place
            std::vector<long> suffix(static_cast<size_t>(box[static_cast<size_t>(l) + 1]) + 3, 0);
            for (const auto& row : rows) {
                if (row.front().first >= off)
                    ++pure;
                else
                    ++suffix[static_cast<size_t>(row.front().first)];
            }
            for (size_t d = suffix.size() - 1; d-- > 0;) suffix[d] += suffix[d + 1];
            for (long gn = 0; gn <= box[static_cast<size_t>(l) + 1] + 1; ++gn) {
                g[static_cast<size_t>(l) + 1] = gn;
                table.at(g) = extra + pure + suffix[static_cast<size_t>(gn)];
            }
            g[static_cast<size_t>(l) + 1] = 0;
        } else {
            std::vector<WindowSpan::Row> proj;
            proj.reserve(rows.size());
            for (const auto& row : rows) {
                if (row.front().first >= off) {
                    ++pure;
                    continue;
                }
                auto cut = std::lower_bound(
                    row.begin(), row.end(), off,
                    [](const std::pair<long, Rat>& e, long c) { return e.first < c; });
                proj.emplace_back(row.begin(), cut);
            }
            sweep(span, l + 1, std::move(proj), extra + pure, g, table);
        }
        if (gl <= box[static_cast<size_t>(l)]) eliminate_column(rows, off + gl);
    }
}

}  // namespace

DimTable WindowSpan::dimension_table() const {
    DimTable table(box_);
    ValVec base(box_.size(), 0);
    sweep(*this, 0, rows_, 0, base, table);
    return table;
}

WindowSpan::Row window_row(const WindowSpan& span, const std::vector<Series>& el) {
    WindowSpan::Row row;
    const ValVec& box = span.box();
    for (size_t i = box.size(); i-- > 0;) {
        for (long d = 0; d <= box[i]; ++d) {
            Rat c = el[i].coeff(d);
            if (!rat_is_zero(c)) row.emplace_back(span.col(static_cast<int>(i), d), c);
        }
    }
    return row;
}

namespace {

bool outside_window(const std::vector<Series>& el, const ValVec& box) {
    for (size_t i = 0; i < box.size(); ++i)
        if (el[i].ord() <= box[i]) return false;
    return true;
}

void span_dfs(WindowSpan& span, const std::vector<std::vector<Series>>& mults, size_t l,
              const std::vector<Series>& cur) {
    if (outside_window(cur, span.box())) return;
    if (l == mults.size()) {
        span.insert(window_row(span, cur));
        return;
    }
    std::vector<Series> el = cur;
    while (!outside_window(el, span.box())) {
        span_dfs(span, mults, l + 1, el);
        for (size_t i = 0; i < el.size(); ++i) el[i] = el[i] * mults[l][i];
    }
}

}  // namespace

WindowSpan build_window_span(const std::vector<std::vector<Series>>& mults,
                             const std::vector<std::vector<Series>>& gens,
                             const ValVec& box) {
    WindowSpan span(box);
    for (const auto& m : mults)
        for (size_t i = 0; i < box.size(); ++i)
            if (!m[i].known_zero() && !m[i].is_zero_to_trunc() && m[i].ord() < 1)
                throw math_error("multiplier is a unit on a branch; span would not terminate");
    for (const auto& g : gens) span_dfs(span, mults, 0, g);
    return span;
}

std::vector<ValVec> table_members(const DimTable& t) {
    const ValVec& box = t.box();
    const int r = static_cast<int>(box.size());
    std::vector<ValVec> out;
    // mask = set of branches clipped at the window top; the full mask would
    // be the zero element, so it is excluded
    for (unsigned mask = 0; mask + 1 < (1u << r); ++mask) {
        ValVec g(static_cast<size_t>(r), 0);
        for (int i = 0; i < r; ++i)
            if (mask & (1u << i)) g[static_cast<size_t>(i)] = box[static_cast<size_t>(i)] + 1;
        for (;;) {
            long here = t.at(g);
            bool member = here > 0;
            for (int j = 0; member && j < r; ++j) {
                if (mask & (1u << j)) continue;
                ValVec up = g;
                ++up[static_cast<size_t>(j)];
                if (t.at(up) >= here) member = false;
            }
            if (member) {
                ValVec v = g;
                for (int i = 0; i < r; ++i)
                    if (mask & (1u << i)) v[static_cast<size_t>(i)] = kTop;
                out.push_back(std::move(v));
            }
            // odometer over the free axes
            int j = r - 1;
            for (; j >= 0; --j) {
                if (mask & (1u << j)) continue;
                if (g[static_cast<size_t>(j)] < box[static_cast<size_t>(j)]) {
                    ++g[static_cast<size_t>(j)];
                    break;
                }
                g[static_cast<size_t>(j)] = 0;
            }
            if (j < 0) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ValueSet compute_value_set(const std::vector<std::vector<Series>>& mults,
                           const std::vector<std::vector<Series>>& gens, const ValVec& box) {
    WindowSpan span = build_window_span(mults, gens, box);
    DimTable table = span.dimension_table();
    ValueSet out;
    out.box = box;
    out.members = table_members(table);
    return out;
}

}  // namespace tjurina
