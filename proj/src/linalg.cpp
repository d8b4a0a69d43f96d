#include "linalg_internal.hpp"

#include <algorithm>
#include <utility>

namespace cosmetic::detail {

std::optional<std::vector<Complex>> solve_linear(CMatrix a, std::vector<Complex> b) {
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        Real best = abs(a[c][c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            Real m = abs(a[r][c]);
            if (m > best) {
                best = m;
                piv = r;
            }
        }
        if (best == 0) return std::nullopt;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == Complex(0)) continue;
            Complex f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
            b[r] -= f * b[c];
        }
    }
    std::vector<Complex> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Complex s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

std::optional<CMatrix> invert(const CMatrix& a) {
    const std::size_t n = a.size();
    CMatrix inv(n, std::vector<Complex>(n));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Complex> e(n);
        e[j] = Complex(1);
        auto col = solve_linear(a, e);
        if (!col) return std::nullopt;
        for (std::size_t i = 0; i < n; ++i) inv[i][j] = (*col)[i];
    }
    return inv;
}

Real inf_norm(const CMatrix& a) {
    Real best = 0;
    for (const auto& row : a) {
        Real s = 0;
        for (const auto& x : row) s += abs(x);
        best = std::max(best, s);
    }
    return best;
}

std::vector<Complex> least_squares(CMatrix a, std::vector<Complex> b, Real& rcond) {
    const std::size_t m = a.size();
    const std::size_t n = a.empty() ? 0 : a[0].size();
    Real rmax = 0, rmin = -1;
    for (std::size_t c = 0; c < n; ++c) {
        Real sigma = 0;
        for (std::size_t r = c; r < m; ++r) sigma += norm(a[r][c]);
        sigma = sqrt(sigma);
        if (sigma == 0) {
            rcond = 0;
            return std::vector<Complex>(n);
        }
        // reflect column c onto alpha e_c with alpha chosen against cancellation
        Real ac = abs(a[c][c]);
        Complex phase = ac == 0 ? Complex(1) : a[c][c] / ac;
        Complex alpha = -(phase * sigma);
        std::vector<Complex> v(m - c);
        for (std::size_t r = c; r < m; ++r) v[r - c] = a[r][c];
        v[0] -= alpha;
        Real vn = 0;
        for (const auto& x : v) vn += norm(x);
        if (vn != 0) {
            auto apply = [&](auto get, auto set) {
                Complex dot;
                for (std::size_t r = c; r < m; ++r) dot += conj(v[r - c]) * get(r);
                Complex f = dot * (Real(2) / vn);
                for (std::size_t r = c; r < m; ++r) set(r, get(r) - f * v[r - c]);
            };
            for (std::size_t j = c; j < n; ++j)
                apply([&](std::size_t r) { return a[r][j]; }, [&](std::size_t r, const Complex& x) { a[r][j] = x; });
            apply([&](std::size_t r) { return b[r]; }, [&](std::size_t r, const Complex& x) { b[r] = x; });
        }
        Real d = abs(a[c][c]);
        rmax = std::max(rmax, d);
        rmin = rmin < 0 ? d : std::min(rmin, d);
    }
    rcond = rmax == 0 ? Real(0) : rmin / rmax;
    std::vector<Complex> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Complex s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

int numeric_rank(CMatrix a, const Real& tol) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    Real scale = 0;
    for (const auto& row : a)
        for (const auto& x : row) scale = std::max(scale, abs(x));
    if (scale == 0) return 0;
    int rank = 0;
    std::vector<std::size_t> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = j;
    for (std::size_t k = 0; k < std::min(m, n); ++k) {
        std::size_t pr = k, pc = k;
        Real best = -1;
        for (std::size_t r = k; r < m; ++r)
            for (std::size_t c = k; c < n; ++c) {
                Real v = abs(a[r][c]);
                if (v > best) {
                    best = v;
                    pr = r;
                    pc = c;
                }
            }
        if (best <= tol * scale) break;
        std::swap(a[k], a[pr]);
        for (auto& row : a) std::swap(row[k], row[pc]);
        for (std::size_t r = k + 1; r < m; ++r) {
            Complex f = a[r][k] / a[k][k];
            for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace cosmetic::detail
