// Copyright 2026 The uqeq Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "uqeq/hilbert.hpp"

namespace uqeq::hilbert {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_size(std::size_t n) {
    if (n > kMaxDim) {
        throw Error(ErrorKind::SizeLimit, "dimension " + std::to_string(n) +
                                              " exceeds " +
                                              std::to_string(kMaxDim));
    }
}

double residual(const ComplexMatrix &m, cplx lambda, const CVector &v) {
    CVector mv = m * v;
    for (std::size_t i = 0; i < v.size(); ++i) {
        mv[i] -= lambda * v[i];
    }
    return norm(mv);
}

CVector column(const ComplexMatrix &m, std::size_t j) {
    CVector c(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        c[i] = m(i, j);
    }
    return c;
}

bool lex_less(const CVector &a, const CVector &b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) {
            return a[i].real() < b[i].real();
        }
        if (a[i].imag() != b[i].imag()) {
            return a[i].imag() < b[i].imag();
        }
    }
    return false;
}

// Marks vectors that are numerically inside the span of the earlier ones.
void flag_dependent(EigenDecomposition &eig) {
    std::vector<CVector> accepted;
    eig.independent.assign(eig.vectors.size(), true);
    for (std::size_t k = 0; k < eig.vectors.size(); ++k) {
        CVector w = eig.vectors[k];
        for (const auto &q : accepted) {
            const cplx p = inner(q, w);
            for (std::size_t i = 0; i < w.size(); ++i) {
                w[i] -= p * q[i];
            }
        }
        const double rest = norm(w);
        if (rest < 1e-6) {
            eig.independent[k] = false;
            eig.defective = true;
            continue;
        }
        for (auto &z : w) {
            z /= rest;
        }
        accepted.push_back(std::move(w));
    }
}

// One complex Jacobi rotation zeroing a(p, q). U = D R D^dagger with
// D = diag(1, conj(e)) and R the real symmetric Jacobi rotation.
void jacobi_rotate(ComplexMatrix &a, ComplexMatrix &v, std::size_t p,
                   std::size_t q) {
    const std::size_t n = a.dim();
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    const cplx e = apq / mag;
    const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const cplx se = s * e;
    const cplx sec = s * std::conj(e);

    for (std::size_t k = 0; k < n; ++k) {
        const cplx akp = a(k, p);
        const cplx akq = a(k, q);
        a(k, p) = c * akp - sec * akq;
        a(k, q) = se * akp + c * akq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx apk = a(p, k);
        const cplx aqk = a(q, k);
        a(p, k) = c * apk - se * aqk;
        a(q, k) = sec * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const cplx vkp = v(k, p);
        const cplx vkq = v(k, q);
        v(k, p) = c * vkp - sec * vkq;
        v(k, q) = se * vkp + c * vkq;
    }
}

double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

// Givens rotation G = [[c, s], [-conj(s), c]] with G [x; y] = [r; 0].
struct Givens {
    double c;
    cplx s;
};

Givens make_givens(cplx x, cplx y) {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ay == 0.0) {
        return {1.0, cplx{0.0, 0.0}};
    }
    if (ax == 0.0) {
        return {0.0, std::conj(y) / ay};
    }
    const double r = std::hypot(ax, ay);
    const cplx alpha = x / ax;
    return {ax / r, alpha * std::conj(y) / r};
}

void hessenberg(ComplexMatrix &h, ComplexMatrix &q) {
    const std::size_t n = h.dim();
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        CVector v(m);
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = h(k + 1 + i, k);
        }
        const double xnorm = norm(v);
        if (xnorm == 0.0) {
            continue;
        }
        const cplx phase =
            std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : cplx{1.0, 0.0};
        const cplx alpha = -phase * xnorm;
        v[0] -= alpha;
        const double vv = std::pow(norm(v), 2);
        if (vv == 0.0) {
            continue;
        }
        // Left: h <- P h on rows k+1..n-1.
        for (std::size_t j = 0; j < n; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t i = 0; i < m; ++i) {
                s += std::conj(v[i]) * h(k + 1 + i, j);
            }
            s *= 2.0 / vv;
            for (std::size_t i = 0; i < m; ++i) {
                h(k + 1 + i, j) -= v[i] * s;
            }
        }
        // Right: h <- h P and q <- q P on columns k+1..n-1.
        for (ComplexMatrix *target : {&h, &q}) {
            ComplexMatrix &t = *target;
            for (std::size_t i = 0; i < n; ++i) {
                cplx s{0.0, 0.0};
                for (std::size_t j = 0; j < m; ++j) {
                    s += t(i, k + 1 + j) * v[j];
                }
                s *= 2.0 / vv;
                for (std::size_t j = 0; j < m; ++j) {
                    t(i, k + 1 + j) -= s * std::conj(v[j]);
                }
            }
        }
        h(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) {
            h(i, k) = 0.0;
        }
    }
}

cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
    const cplx half_tr = 0.5 * (a + d);
    const cplx det = a * d - b * c;
    const cplx disc = std::sqrt(half_tr * half_tr - det);
    const cplx l1 = half_tr + disc;
    const cplx l2 = half_tr - disc;
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

// Reduces upper Hessenberg h to upper triangular (Schur) form in place,
// accumulating the unitary similarity into z. Returns the iteration count.
int schur_qr(ComplexMatrix &h, ComplexMatrix &z) {
    const std::size_t n = h.dim();
    const int cap = static_cast<int>(100 * n);
    const double hnorm = std::max(h.frobenius_norm(), 1e-300);
    int total = 0;
    int since_deflation = 0;
    std::size_t hi = n - 1;
    std::vector<Givens> rot(n);

    while (hi > 0) {
        std::size_t lo = hi;
        while (lo > 0) {
            double scale = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (scale == 0.0) {
                scale = hnorm;
            }
            if (std::abs(h(lo, lo - 1)) <= kEps * scale) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            --hi;
            since_deflation = 0;
            continue;
        }
        if (++total > cap) {
            throw Error(ErrorKind::NoConvergence,
                        "QR iteration exceeded " + std::to_string(cap) +
                            " sweeps");
        }
        ++since_deflation;

        cplx mu;
        if (since_deflation % 10 == 0) {
            // Exceptional shift to break cycles.
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi),
                                 h(hi, hi - 1), h(hi, hi));
        }

        for (std::size_t k = lo; k <= hi; ++k) {
            h(k, k) -= mu;
        }
        for (std::size_t k = lo; k < hi; ++k) {
            const Givens g = make_givens(h(k, k), h(k + 1, k));
            rot[k] = g;
            for (std::size_t j = k; j < n; ++j) {
                const cplx x = h(k, j);
                const cplx y = h(k + 1, j);
                h(k, j) = g.c * x + g.s * y;
                h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
            h(k + 1, k) = 0.0;
        }
        for (std::size_t k = lo; k < hi; ++k) {
            const Givens g = rot[k];
            const std::size_t last = std::min(k + 2, hi);
            for (std::size_t i = 0; i <= last; ++i) {
                const cplx x = h(i, k);
                const cplx y = h(i, k + 1);
                h(i, k) = x * g.c + y * std::conj(g.s);
                h(i, k + 1) = -x * g.s + y * g.c;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const cplx x = z(i, k);
                const cplx y = z(i, k + 1);
                z(i, k) = x * g.c + y * std::conj(g.s);
                z(i, k + 1) = -x * g.s + y * g.c;
            }
        }
        for (std::size_t k = lo; k <= hi; ++k) {
            h(k, k) += mu;
        }
    }
    return total;
}

} // namespace

EigenDecomposition hermitian_eigen(const Observable &obs) {
    const ComplexMatrix &m = obs.matrix();
    const std::size_t n = m.dim();
    check_size(n);

    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double mnorm = m.frobenius_norm();
    const int cap = static_cast<int>(100 * n);
    int sweeps = 0;
    bool converged = false;
    for (; sweeps <= cap; ++sweeps) {
        if (off_diagonal_norm(a) <= 4.0 * kEps * mnorm) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) > 0.0) {
                    jacobi_rotate(a, v, p, q);
                }
            }
        }
    }
    if (!converged) {
        throw Error(ErrorKind::NoConvergence,
                    "Jacobi exceeded " + std::to_string(cap) + " sweeps");
    }

    std::vector<double> lambda(n);
    std::vector<CVector> vecs(n);
    for (std::size_t k = 0; k < n; ++k) {
        lambda[k] = a(k, k).real();
        vecs[k] = column(v, k);
        fix_phase(vecs[k]);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
        return lambda[i] < lambda[j];
    });
    const double tie = 1e-10 * std::max(1.0, mnorm);
    for (std::size_t start = 0; start < n;) {
        std::size_t end = start + 1;
        while (end < n && lambda[order[end]] - lambda[order[end - 1]] <= tie) {
            ++end;
        }
        std::sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                  order.begin() + static_cast<std::ptrdiff_t>(end),
                  [&](auto i, auto j) { return lex_less(vecs[i], vecs[j]); });
        start = end;
    }

    EigenDecomposition eig;
    eig.iterations = sweeps;
    for (const auto k : order) {
        eig.values.emplace_back(lambda[k], 0.0);
        eig.residuals.push_back(residual(m, lambda[k], vecs[k]));
        eig.vectors.push_back(std::move(vecs[k]));
    }
    eig.independent.assign(n, true);
    return eig;
}

EigenDecomposition general_eigen(const ComplexMatrix &m) {
    const std::size_t n = m.dim();
    check_size(n);

    ComplexMatrix t = m;
    ComplexMatrix z = ComplexMatrix::identity(n);
    hessenberg(t, z);
    const int iters = n > 1 ? schur_qr(t, z) : 0;

    EigenDecomposition eig;
    eig.iterations = iters;
    const double tnorm = t.frobenius_norm();
    const double smin = std::max(kEps * tnorm, std::numeric_limits<double>::min());

    for (std::size_t k = 0; k < n; ++k) {
        const cplx lambda = t(k, k);
        // Solve (T - lambda I) x = 0 with x_k = 1, x_j = 0 for j > k.
        CVector x(n, cplx{0.0, 0.0});
        x[k] = 1.0;
        for (std::size_t ii = k; ii-- > 0;) {
            cplx s{0.0, 0.0};
            for (std::size_t j = ii + 1; j <= k; ++j) {
                s += t(ii, j) * x[j];
            }
            cplx denom = t(ii, ii) - lambda;
            if (std::abs(denom) < smin) {
                denom = smin;
            }
            x[ii] = -s / denom;
            if (std::abs(x[ii]) > 1e100) {
                for (std::size_t j = ii; j <= k; ++j) {
                    x[j] *= 1e-100;
                }
            }
        }
        CVector v = z * x;
        const double vn = norm(v);
        for (auto &c : v) {
            c /= vn;
        }
        fix_phase(v);
        eig.values.push_back(lambda);
        eig.residuals.push_back(residual(m, lambda, v));
        eig.vectors.push_back(std::move(v));
    }
    flag_dependent(eig);
    return eig;
}

} // namespace uqeq::hilbert
