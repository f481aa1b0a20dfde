#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "scalars.hpp"

namespace polarwitt {

/// Sparse vector over F_p keyed by column index.
using FpVec = std::map<std::size_t, std::uint32_t>;

inline void fp_axpy(FpVec& y, std::uint32_t a, const FpVec& x, std::uint32_t p) {
    if (a % p == 0) return;
    for (const auto& [c, v] : x) {
        auto& slot = y[c];
        slot = static_cast<std::uint32_t>((slot + static_cast<std::uint64_t>(a) * v) % p);
        if (slot == 0) y.erase(c);
    }
}

/// Incremental row echelon form over F_p. The pivot of each row is its largest column, so
/// callers order columns with the preferred pivots last. Rows remember which inserted
/// vectors they combine, which gives coordinates with respect to the inserted basis.
class FpEchelon {
public:
    explicit FpEchelon(std::uint32_t p) : p_(p) {}

    std::uint32_t prime() const noexcept { return p_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    /// Number of vectors offered to insert (independent or not).
    std::size_t inserted() const noexcept { return inserted_; }

    /// Reduces v modulo the row space; returns the residual (zero iff v is in the span).
    FpVec reduce(FpVec v) const {
        FpVec dummy;
        reduce_tracking(v, dummy, false);
        return v;
    }

    bool contains(const FpVec& v) const { return reduce(v).empty(); }

    /// Adds v; returns true iff it enlarged the span.
    bool insert(const FpVec& v) {
        FpVec r = v;
        FpVec combo;
        combo[inserted_] = 1;
        ++inserted_;
        reduce_tracking(r, combo, true);
        if (r.empty()) return false;
        auto pivot = r.rbegin()->first;
        std::uint32_t inv = inv_mod(r.rbegin()->second, p_);
        scale(r, inv);
        scale(combo, inv);
        // keep rows fully reduced at the new pivot
        for (auto& row : rows_) {
            auto it = row.vec.find(pivot);
            if (it == row.vec.end()) continue;
            std::uint32_t f = p_ - it->second;
            fp_axpy(row.vec, f, r, p_);
            fp_axpy(row.combo, f, combo, p_);
        }
        rows_.push_back({pivot, std::move(r), std::move(combo)});
        pivot_index_[pivot] = rows_.size() - 1;
        return true;
    }

    /// Coordinates of v as a combination of inserted vectors (indexed by insertion order),
    /// or nullopt when v is not in the span.
    std::optional<FpVec> coordinates(FpVec v) const {
        FpVec combo;
        reduce_tracking(v, combo, true);
        if (!v.empty()) return std::nullopt;
        FpVec out;
        for (const auto& [k, a] : combo) out[k] = (p_ - a) % p_;
        for (auto it = out.begin(); it != out.end();) it = it->second ? std::next(it) : out.erase(it);
        return out;
    }

    /// The reduced rows (a canonical basis of the span), largest pivot first.
    std::vector<FpVec> basis_rows() const {
        std::vector<const Row*> rs;
        for (const auto& r : rows_) rs.push_back(&r);
        std::sort(rs.begin(), rs.end(), [](const Row* a, const Row* b) { return a->pivot > b->pivot; });
        std::vector<FpVec> out;
        for (auto* r : rs) out.push_back(r->vec);
        return out;
    }

    std::vector<std::size_t> pivots() const {
        std::vector<std::size_t> out;
        for (const auto& r : rows_) out.push_back(r.pivot);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    struct Row {
        std::size_t pivot;
        FpVec vec;
        FpVec combo;
    };

    void scale(FpVec& v, std::uint32_t a) const {
        for (auto& [c, x] : v) x = mul_mod(x, a, p_);
    }

    // Subtracts multiples of rows until no pivot column of v is populated; `combo` receives the
    // same row operations applied to the row combinations.
    void reduce_tracking(FpVec& v, FpVec& combo, bool track) const {
        while (true) {
            bool changed = false;
            for (auto it = v.rbegin(); it != v.rend(); ++it) {
                auto pi = pivot_index_.find(it->first);
                if (pi == pivot_index_.end()) continue;
                const Row& row = rows_[pi->second];
                std::uint32_t f = p_ - it->second;
                fp_axpy(v, f, row.vec, p_);
                if (track) fp_axpy(combo, f, row.combo, p_);
                changed = true;
                break;
            }
            if (!changed) return;
        }
    }

    std::uint32_t p_;
    std::size_t inserted_ = 0;
    std::vector<Row> rows_;
    std::map<std::size_t, std::size_t> pivot_index_;
};

/// Kernel of the linear map whose columns are images[i] (a basis of the solution space,
/// each solution a vector indexed by i).
inline std::vector<FpVec> fp_kernel(const std::vector<FpVec>& images, std::uint32_t p) {
    FpEchelon ech(p);
    std::vector<FpVec> kernel;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (ech.contains(images[i])) {
            auto c = ech.coordinates(images[i]);
            FpVec k = *c;
            // images[i] = sum c_k images[idx_k] with idx over inserted order == i' < i
            FpVec sol;
            for (const auto& [idx, a] : k) sol[idx] = (p - a) % p;
            sol[i] = 1;
            for (auto it = sol.begin(); it != sol.end();) it = it->second ? std::next(it) : sol.erase(it);
            kernel.push_back(sol);
        }
        ech.insert(images[i]);
    }
    return kernel;
}

// ---------------------------------------------------------------- integer matrices

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// Row Hermite form of a lattice basis (rows), pivots strictly increasing, positive.
inline IntMatrix hermite_rows(IntMatrix rows, std::size_t ncols) {
    IntMatrix out;
    std::size_t r0 = 0;
    for (std::size_t c = 0; c < ncols && r0 < rows.size(); ++c) {
        // gcd-combine all rows r >= r0 in column c into row r0
        for (std::size_t r = r0 + 1; r < rows.size(); ++r) {
            while (rows[r][c] != 0) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), rows[r0][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (std::size_t k = c; k < ncols; ++k) rows[r0][k] -= q * rows[r][k];
                std::swap(rows[r0], rows[r]);
            }
        }
        if (rows[r0][c] == 0) continue;
        if (rows[r0][c] < 0)
            for (std::size_t k = c; k < ncols; ++k) rows[r0][k] = -rows[r0][k];
        for (std::size_t r = 0; r < r0; ++r) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[r0][c].get_mpz_t());
            if (q != 0)
                for (std::size_t k = c; k < ncols; ++k) rows[r][k] -= q * rows[r0][k];
        }
        ++r0;
    }
    for (std::size_t r = 0; r < r0; ++r) out.push_back(rows[r]);
    return out;
}

/// Membership of v in the row lattice given in Hermite form.
inline bool lattice_contains(const IntMatrix& hermite, std::vector<mpz_class> v) {
    std::size_t ncols = v.size();
    for (const auto& row : hermite) {
        std::size_t c = 0;
        while (c < ncols && row[c] == 0) ++c;
        if (c == ncols) continue;
        for (std::size_t k = 0; k < c; ++k)
            if (v[k] != 0) return false;
        if (!mpz_divisible_p(v[c].get_mpz_t(), row[c].get_mpz_t())) return false;
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), v[c].get_mpz_t(), row[c].get_mpz_t());
        for (std::size_t k = c; k < ncols; ++k) v[k] -= q * row[k];
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

/// Smith invariant factors (nonzero diagonal entries, sorted, 1s included) of a square or
/// rectangular integer matrix.
inline std::vector<mpz_class> smith_invariants(IntMatrix a) {
    std::size_t m = a.size();
    std::size_t n = m ? a[0].size() : 0;
    std::vector<mpz_class> diag;
    std::size_t t = 0;
    while (t < m && t < n) {
        // find nonzero entry of minimal absolute value in the remaining block
        std::size_t pr = m, pc = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a[i][j] != 0 && (pr == m || abs(a[i][j]) < abs(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == m) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (auto& row : a) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility condition: pivot must divide the remaining block
                for (std::size_t i = t + 1; i < m && clean; ++i)
                    for (std::size_t j = t + 1; j < n && clean; ++j)
                        if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
                            for (std::size_t k = t; k < n; ++k) a[t][k] += a[i][k];
                            clean = false;
                        }
            }
        }
        diag.push_back(abs(a[t][t]));
        ++t;
    }
    std::sort(diag.begin(), diag.end());
    return diag;
}

} // namespace polarwitt
