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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1 for ctest).
//
//   acceptance [--cli path/to/uqeq]

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "uqeq/error.hpp"
#include "uqeq/hilbert.hpp"
#include "uqeq/intelligent.hpp"
#include "uqeq/qubit.hpp"
#include "uqeq/relations.hpp"
#include "uqeq/spin.hpp"

using namespace uqeq;
using hilbert::cplx;
using hilbert::Observable;
using hilbert::PureState;
using relations::Sign;

namespace {

const double kPi = std::acos(-1.0);
constexpr std::uint64_t kSeed = 20260714;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

int failures = 0;

void criterion(int id, const char *title, const std::function<Outcome()> &body,
               double budgetSeconds = std::numeric_limits<double>::infinity()) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception &e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (secs > budgetSeconds) {
        o.pass = false;
        o.detail += "; over time budget " + fmt("%.0f s", budgetSeconds);
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s  criterion %2d  %-34s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL",
                id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

// Random triples shared by criteria 1 to 7.
struct Triple {
    Observable a;
    Observable b;
    PureState psi;
    std::vector<PureState> basis;
    oracle::Mat am;
    oracle::Mat bm;
    double varA;
    double varB;
    double expC;
};

std::vector<Triple> make_triples() {
    std::vector<Triple> out;
    for (const std::size_t d : {2u, 3u, 4u, 8u, 16u}) {
        for (std::uint64_t t = 0; t < 1000; ++t) {
            const std::uint64_t key = hilbert::derive_seed(kSeed, {d, t});
            Observable a = hilbert::sample_observable(hilbert::derive_seed(key, {0}), d);
            Observable b = hilbert::sample_observable(hilbert::derive_seed(key, {1}), d);
            PureState psi = hilbert::sample_state(hilbert::derive_seed(key, {2}), d);
            auto basis = hilbert::complement_basis(psi);
            auto am = oracle::to_mat(a);
            auto bm = oracle::to_mat(b);
            const double va = oracle::variance(am, psi.amplitudes());
            const double vb = oracle::variance(bm, psi.amplitudes());
            const double c = oracle::exp_c(am, bm, psi.amplitudes());
            out.push_back({std::move(a), std::move(b), std::move(psi),
                           std::move(basis), std::move(am), std::move(bm), va, vb,
                           c});
        }
    }
    return out;
}

Outcome max_check(double worst, double tol, const std::string &extra = {}) {
    return {worst <= tol,
            "max residual " + fmt("%.3g", worst) + " <= " + fmt("%.0e", tol) +
                extra};
}

std::vector<PureState> oracle_basis(const PureState &psi) {
    std::vector<PureState> out;
    for (const auto &v : oracle::gram_schmidt_complement(psi.amplitudes())) {
        out.emplace_back(v, 1e-10);
    }
    return out;
}

struct Capture {
    int code;
    std::string out;
};

Capture in_process(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str()};
}

Capture spawn(const std::string &cmd) {
    Capture c{0, {}};
    FILE *p = popen(cmd.c_str(), "r");
    if (p == nullptr) {
        return {-1, {}};
    }
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) {
        c.out.append(buf, n);
    }
    c.code = pclose(p);
    return c;
}

// Minimizer of var(A) + var(tB) with t tuned so that both deviations agree.
struct BalancedCase {
    bool found;
    double gap;
    double productResidual;
    double sumResidual;
};

BalancedCase balance(const Observable &a, const Observable &b,
                     std::uint64_t seed) {
    auto scaled = [&](double t) {
        return Observable(cplx{t, 0.0} * b.matrix());
    };
    auto gap = [&](double t, intelligent::SumMinimum *keep) {
        const Observable bt = scaled(t);
        auto m = intelligent::minimize_sum_variance(a, bt, seed);
        const auto p = relations::pair_moments(a, bt, m.state);
        if (keep != nullptr) {
            *keep = m;
        }
        return std::sqrt(p.varA) - std::sqrt(p.varB);
    };
    double lo = 1e-2;
    double hi = 1e2;
    double flo = gap(lo, nullptr);
    double fhi = gap(hi, nullptr);
    if (flo * fhi > 0) {
        return {false, 0, 0, 0};
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = std::sqrt(lo * hi);
        const double fm = gap(mid, nullptr);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi / lo - 1.0 < 1e-13) {
            break;
        }
    }
    intelligent::SumMinimum m{PureState::basis(a.dim(), 0), 0, 0, 0};
    const double t = std::sqrt(lo * hi);
    const double g = gap(t, &m);
    if (std::abs(g) > 1e-6) {
        return {false, g, 0, 0};
    }
    const auto c = intelligent::classify_state(a, scaled(t), m.state);
    return {true, g, c.criticalProductResidual.value_or(HUGE_VAL),
            c.criticalSumResidual};
}

} // namespace

int main(int argc, char **argv) {
    std::string cliPath;
    for (int k = 1; k + 1 < argc; ++k) {
        if (std::string(argv[k]) == "--cli") {
            cliPath = argv[k + 1];
        }
    }

    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Triple> triples = make_triples();
    const double setup =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("random triples: %zu (d = 2, 3, 4, 8, 16), setup %.2f s\n",
                triples.size(), setup);

    criterion(1, "sum-of-variances equality", [&] {
        double worst = 0;
        for (const auto &t : triples) {
            for (const Sign s : {Sign::Plus, Sign::Minus}) {
                const auto r = relations::theorem1_equality(t.a, t.b, t.psi, t.basis, s);
                worst = std::max(worst, std::abs(t.varA + t.varB - r.rhs));
            }
        }
        return max_check(worst, 1e-9);
    }, 30.0);

    criterion(2, "product-of-deviations equality", [&] {
        double worst = 0;
        int used = 0;
        for (const auto &t : triples) {
            if (std::abs(t.expC) <= 1e-6) {
                continue;
            }
            ++used;
            for (const Sign s : {Sign::Plus, Sign::Minus}) {
                const auto r = relations::theorem2_equality(t.a, t.b, t.psi, t.basis, s);
                worst = std::max(worst, std::abs(std::sqrt(t.varA * t.varB) - r.rhs));
            }
        }
        return max_check(worst, 1e-9, ", " + std::to_string(used) + " triples");
    });

    criterion(3, "basis independence", [&] {
        double worst = 0;
        for (const auto &t : triples) {
            const auto other = oracle_basis(t.psi);
            for (const Sign s : {Sign::Plus, Sign::Minus}) {
                worst = std::max(
                    worst,
                    std::abs(relations::theorem1_equality(t.a, t.b, t.psi, t.basis, s).rhs -
                             relations::theorem1_equality(t.a, t.b, t.psi, other, s).rhs));
            }
        }
        return max_check(worst, 1e-9);
    });

    criterion(4, "hierarchy of partial sums", [&] {
        double endGap = 0;
        double drop = 0;
        double excess = -HUGE_VAL;
        for (const auto &t : triples) {
            const double w = t.varA + t.varB;
            for (const Sign s : {Sign::Plus, Sign::Minus}) {
                const auto h = relations::hierarchy_bounds(t.a, t.b, t.psi, t.basis, s);
                endGap = std::max(endGap, std::abs(h.back() - w));
                for (std::size_t m = 0; m < h.size(); ++m) {
                    excess = std::max(excess, h[m] - w);
                    if (m > 0) {
                        drop = std::max(drop, h[m - 1] - h[m]);
                    }
                }
            }
        }
        const bool ok = endGap <= 1e-9 && drop <= 0.0 && excess <= 1e-10;
        return Outcome{ok, "final gap " + fmt("%.3g", endGap) + " <= 1e-09, max drop " +
                               fmt("%.3g", drop) + " <= 0, max excess " +
                               fmt("%.3g", excess) + " <= 1e-10"};
    });

    criterion(5, "parallelogram identity", [&] {
        double worst = 0;
        for (const auto &t : triples) {
            worst = std::max(worst, std::abs(relations::maccone_pati_l2(t.a, t.b, t.psi) +
                                             relations::maccone_pati_l3(t.a, t.b, t.psi) -
                                             t.varA - t.varB));
        }
        return max_check(worst, 1e-10);
    });

    criterion(6, "variance chain and remainder", [&] {
        double chain = 0;
        double upsilon = 0;
        for (const auto &t : triples) {
            const double w = t.varA + t.varB;
            const double root = 2 * std::sqrt(t.varA * t.varB);
            chain = std::max({chain, root - w, std::abs(t.expC) - root});
            const auto p = relations::pair_moments(t.a, t.b, t.psi);
            upsilon = std::max(upsilon, -(p.varA * p.varB - p.expC * p.expC / 4 -
                                          p.expF * p.expF / 4));
        }
        return Outcome{chain <= 1e-10 && upsilon <= 1e-10,
                       "max chain violation " + fmt("%.3g", chain) +
                           ", max negative remainder " + fmt("%.3g", upsilon) +
                           " <= 1e-10"};
    });

    criterion(7, "tight orthogonal state", [&] {
        double worst = 0;
        for (const auto &t : triples) {
            for (const Sign s : {Sign::Plus, Sign::Minus}) {
                const auto opt = relations::optimal_orthogonal_state(t.a, t.b, t.psi, s);
                worst = std::max(worst,
                                 std::abs(relations::maccone_pati_l1(t.a, t.b, t.psi, opt, s) -
                                          t.varA - t.varB));
            }
        }
        return max_check(worst, 1e-9);
    });

    criterion(8, "qubit closed forms", [&] {
        oracle::Rng rng(kSeed + 8);
        double worst = 0;
        int finite = 0;
        for (int k = 0; k < 10000; ++k) {
            const double theta = rng.uniform(0, kPi);
            const double varphi = rng.uniform(0, 2 * kPi);
            const double phi = rng.uniform(-kPi / 4 + 1e-3, 3 * kPi / 4 - 1e-3);
            const auto a = oracle::axis_pauli({std::cos(phi), std::sin(phi), 0});
            const auto b = oracle::axis_pauli({std::sin(phi), std::cos(phi), 0});
            const oracle::Vec psi{std::cos(theta / 2),
                                  std::polar(std::sin(theta / 2), varphi)};
            const double va = oracle::variance(a, psi);
            const double vb = oracle::variance(b, psi);
            const double c = oracle::exp_c(a, b, psi);
            const double g1 = va * vb / (c * c / 4);
            const double g2 = (va + vb) / (oracle::variance(oracle::add(a, b), psi) / 2);
            const auto u1 = qubit::u1_closed(theta, varphi, phi);
            const auto u2 = qubit::u2_closed(theta, varphi, phi);
            if (u1.finite() && u2.finite()) {
                ++finite;
                worst = std::max({worst, std::abs(u1.value - g1) / std::max(1.0, g1),
                                  std::abs(u2.value - g2) / std::max(1.0, g2)});
            }
        }
        double feature = 0;
        for (const double phi : {0.0, 0.1, kPi / 8, 0.5}) {
            feature = std::max(feature,
                               std::abs(qubit::u2_closed(kPi / 2, 3 * kPi / 4, phi).value - 1));
        }
        for (const double varphi : {0.0, 1.0, 3.0, 6.0}) {
            feature = std::max(feature, std::abs(qubit::u1_closed(0, varphi, 0).value - 1));
        }
        const bool diverges =
            qubit::u2_closed(kPi / 2, kPi / 4, 0).flag == qubit::Flag::PosInfinity &&
            qubit::u2_closed(kPi / 2, kPi / 4, kPi / 8).flag == qubit::Flag::PosInfinity;
        const bool ok = worst <= 1e-9 && feature <= 1e-12 && diverges && finite > 9000;
        return Outcome{ok, "max relative mismatch " + fmt("%.3g", worst) +
                               " <= 1e-09 over " + std::to_string(finite) +
                               " finite points, quoted points off by " +
                               fmt("%.3g", feature) + (diverges ? ", U2 diverges" : ", U2 finite")};
    });

    criterion(9, "single-qubit saturation", [&] {
        oracle::Rng rng(kSeed + 9);
        double l1 = 0;
        double amended = 0;
        int skipped = 0;
        for (int k = 0; k < 10000; ++k) {
            const qubit::PlanarPair pair{rng.uniform(0, 2 * kPi)};
            const Observable a = pair.a();
            const Observable b = pair.b();
            const PureState psi = rng.state(2);
            const PureState perp = hilbert::complement_basis(psi)[0];
            const auto am = oracle::to_mat(a);
            const auto bm = oracle::to_mat(b);
            const double va = oracle::variance(am, psi.amplitudes());
            const double vb = oracle::variance(bm, psi.amplitudes());
            const double c = oracle::exp_c(am, bm, psi.amplitudes());
            for (const Sign s : {Sign::Plus, Sign::Minus}) {
                l1 = std::max(l1, std::abs(relations::maccone_pati_l1(a, b, psi, perp, s) - va - vb));
                if (std::abs(c) > 1e-6) {
                    amended = std::max(amended,
                                       std::abs(relations::amended_rur(a, b, psi, perp, s).bound -
                                                std::sqrt(va * vb)));
                } else {
                    ++skipped;
                }
            }
        }
        return Outcome{l1 <= 1e-9 && amended <= 1e-9,
                       "L1 mismatch " + fmt("%.3g", l1) + ", amended mismatch " +
                           fmt("%.3g", amended) + " <= 1e-09 (" +
                           std::to_string(skipped) + " commuting evaluations skipped)"};
    });

    criterion(10, "state-independent sum bound", [&] {
        const int n = 1000;
        std::vector<qubit::Vec3> sphere;
        sphere.reserve(n * n);
        for (int i = 0; i < n; ++i) {
            const double theta = kPi * (i + 0.5) / n;
            for (int j = 0; j < n; ++j) {
                const double varphi = 2 * kPi * j / n;
                sphere.push_back({std::sin(theta) * std::cos(varphi),
                                  std::sin(theta) * std::sin(varphi), std::cos(theta)});
            }
        }
        oracle::Rng rng(kSeed + 10);
        double below = -HUGE_VAL;
        double far = 0;
        for (int k = 0; k < 100; ++k) {
            const auto a = rng.unit3();
            const auto b = rng.unit3();
            const double bound = qubit::state_independent_bound(a, b).bound;
            double best = HUGE_VAL;
            for (const auto &r : sphere) {
                best = std::min(best, qubit::sum_variances_bloch(a, b, qubit::BlochState(r)));
            }
            below = std::max(below, bound - best);
            far = std::max(far, best - bound);
        }
        return Outcome{below <= 1e-4 && far <= 1e-3,
                       "grid minimum below bound by at most " + fmt("%.3g", below) +
                           " (<= 1e-04), above by at most " + fmt("%.3g", far) +
                           " (<= 1e-03)"};
    }, 60.0);

    criterion(11, "mixedness identity", [&] {
        oracle::Rng rng(kSeed + 11);
        double mixed = 0;
        double pure = 0;
        for (int k = 0; k < 10000; ++k) {
            const auto a = rng.unit3();
            const auto b = rng.unit3();
            auto r = rng.unit3();
            const auto p = qubit::upsilon_identity(a, b, qubit::BlochState(r));
            pure = std::max({pure, std::abs(p.lhs), std::abs(p.rhs)});
            const double len = std::cbrt(rng.uniform(0, 1));
            for (auto &x : r) {
                x *= len;
            }
            const auto m = qubit::upsilon_identity(a, b, qubit::BlochState(r));
            const double rhs = (1 - std::pow(qubit::dot(a, b), 2)) * (1 - len * len);
            mixed = std::max({mixed, std::abs(m.lhs - rhs), std::abs(m.lhs - m.rhs)});
        }
        return Outcome{mixed <= 1e-10 && pure <= 1e-10,
                       "mixed mismatch " + fmt("%.3g", mixed) + ", pure magnitude " +
                           fmt("%.3g", pure) + " <= 1e-10"};
    });

    criterion(12, "intelligent states", [&] {
        const Observable sx(hilbert::ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}));
        const Observable sy(hilbert::ComplexMatrix(2, {0.0, cplx{0, -1}, cplx{0, 1}, 0.0}));
        double pauliGap = 0;
        bool pauliOis = true;
        for (const double g : {1.0, -1.0}) {
            const auto states = intelligent::solve_intelligent_states(sx, sy, g);
            pauliOis = pauliOis && !states.empty();
            for (const auto &s : states) {
                pauliOis = pauliOis && s.classification.isOIS;
                const auto am = oracle::to_mat(sx);
                const auto bm = oracle::to_mat(sy);
                const double va = oracle::variance(am, s.state.amplitudes());
                const double vb = oracle::variance(bm, s.state.amplitudes());
                const double c = oracle::exp_c(am, bm, s.state.amplitudes());
                pauliGap = std::max(pauliGap, std::abs(std::sqrt(va * vb) - std::abs(c) / 2));
            }
        }
        oracle::Rng rng(kSeed + 12);
        double ratio = 0;
        int ois = 0;
        for (int k = 0; k < 200; ++k) {
            const std::size_t d = 2 + k % 5;
            const Observable a = rng.observable(d);
            const Observable b = rng.observable(d);
            for (const auto &s : intelligent::solve_intelligent_states(a, b, rng.uniform(-3, 3))) {
                if (!s.classification.isOIS) {
                    continue;
                }
                const auto p = relations::pair_moments(a, b, s.state);
                if (p.varB <= 1e-12) {
                    continue;
                }
                ++ois;
                const cplx g = *s.classification.gamma;
                ratio = std::max(ratio, std::abs(std::norm(g) - p.varA / p.varB));
            }
        }
        int gis = 0;
        for (int k = 0; k < 10000; ++k) {
            const Observable a = k % 2 == 0 ? sx : rng.observable(2);
            const Observable b = k % 2 == 0 ? sy : rng.observable(2);
            gis += intelligent::classify_state(a, b, rng.state(2)).isGIS ? 1 : 0;
        }
        const bool ok = pauliOis && pauliGap <= 1e-8 && ratio <= 1e-6 && ois > 0 &&
                        gis == 10000;
        return Outcome{ok, "Pauli RUR gap " + fmt("%.3g", pauliGap) +
                               " <= 1e-08, ratio mismatch " + fmt("%.3g", ratio) +
                               " <= 1e-06 over " + std::to_string(ois) + " OIS, " +
                               std::to_string(gis) + "/10000 qubit states GIS"};
    });

    criterion(13, "critical states of the sum", [&] {
        oracle::Rng rng(kSeed + 13);
        double sum = 0;
        double product = 0;
        int balanced = 0;
        const int problems = 20;
        for (int k = 0; k < problems; ++k) {
            const Observable a = rng.observable(3);
            const Observable b = rng.observable(3);
            const auto m = intelligent::minimize_sum_variance(a, b, kSeed + k);
            sum = std::max(sum, m.criticalSumResidual);
            const auto bc = balance(a, b, kSeed + k);
            if (bc.found) {
                ++balanced;
                sum = std::max(sum, bc.sumResidual);
                product = std::max(product, bc.productResidual);
            }
        }
        return Outcome{sum <= 1e-6 && product <= 1e-5 && balanced > 0,
                       "sum residual " + fmt("%.3g", sum) + " <= 1e-06, product residual " +
                           fmt("%.3g", product) + " <= 1e-05 on " +
                           std::to_string(balanced) + "/" + std::to_string(problems) +
                           " balanced problems"};
    });

    criterion(14, "spin squeezing chain", [&] {
        const spin::SpinSystem two = spin::build_spin(2);
        const spin::Frame xzy{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
        const auto css = spin::squeezing_report(two, spin::coherent_spin_state(two, 0, 0), xzy);
        const double cssGap = std::max({std::abs(css.xiR2 - 1), std::abs(css.chi2 - 1),
                                        std::abs(css.xiH2 - 1)});
        const spin::SpinSystem ten = spin::build_spin(10);
        double best = HUGE_VAL;
        double chain = -HUGE_VAL;
        for (const auto &row : spin::oat_sweep(ten, kPi / 2, 0, 0, 0.5, 101)) {
            best = std::min(best, row.report.xiR2);
            chain = std::max({chain, row.report.generalizedBound - row.report.xiR2,
                              row.report.chi2 - row.report.generalizedBound});
        }
        // Wider families. Away from the squeezed regime xiR2 grows large and
        // the bound is conditioned by 1/(1 - theta1/2), so the tolerance is
        // taken relative to max(1, xiR2) there.
        oracle::Rng rng(kSeed + 14);
        double wideAbs = 0;
        double wideScaled = 0;
        int wide = 0;
        auto add = [&](const spin::SpinSystem &s, const PureState &psi) {
            try {
                const auto r = spin::squeezing_report(s, psi, spin::optimal_frame(s, psi));
                const double v = std::max(r.generalizedBound - r.xiR2,
                                          r.chi2 - r.generalizedBound);
                wideAbs = std::max(wideAbs, v);
                wideScaled = std::max(wideScaled, v / std::max(1.0, r.xiR2));
                ++wide;
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::PolarizationUndefined &&
                    e.kind() != ErrorKind::DegenerateDirection) {
                    throw;
                }
            }
        };
        for (int k = 0; k < 200; ++k) {
            const spin::SpinSystem s = spin::build_spin(1 + k % 40);
            const double theta = rng.uniform(0, kPi);
            const double varphi = rng.uniform(0, 2 * kPi);
            const double mu = rng.uniform(0, 1);
            add(s, spin::one_axis_twist(s, theta, varphi, mu));
        }
        for (int k = 0; k < 100; ++k) {
            const spin::SpinSystem s = spin::build_spin(1 + k % 40);
            add(s, rng.state(s.dim()));
        }
        const bool ok = cssGap <= 1e-10 && best < 1 && chain <= 1e-9 &&
                        wideScaled <= 1e-9;
        return Outcome{ok, "coherent-state gap " + fmt("%.3g", cssGap) +
                               " <= 1e-10, min xiR2 " + fmt("%.4f", best) +
                               " < 1, chain violation " + fmt("%.3g", chain) +
                               " <= 1e-09 on the N=10 sweep; " + std::to_string(wide) +
                               " twisted/random states: " + fmt("%.3g", wideScaled) +
                               " <= 1e-09 relative to max(1, xiR2), absolute " +
                               fmt("%.3g", wideAbs)};
    }, 10.0);

    criterion(15, "command-line determinism", [&] {
        std::string pair = "/tmp/uqeq_acceptance_pair.json";
        if (FILE *f = std::fopen(pair.c_str(), "w")) {
            std::fputs(R"({"A":{"dim":2,"matrix":[[[0,0],[1,0]],[[1,0],[0,0]]]},)"
                       R"("B":{"dim":2,"matrix":[[[0.5,0],[0,-1]],[[0,1],[-0.5,0]]]},)"
                       R"("psi":{"dim":2,"amplitudes":[[0.6,0],[0,0.8]]}})",
                       f);
            std::fclose(f);
        }
        const std::vector<std::vector<std::string>> configs = {
            {"verify", "--trials", "50", "--seed", "7"},
            {"bounds", pair},
            {"qubit-grid", "--phi", "0.3926990817", "--n-theta", "61", "--n-varphi", "121"},
            {"intelligent", pair, "--gamma", "0.7"},
            {"spin", "--n", "10", "--css", "1.5707963267948966", "0", "--oat-sweep", "0",
             "0.5", "101"},
            {"spin", "--n", "5", "--css", "0.3", "1.2", "--mu", "0.2"}};
        int identical = 0;
        int compared = 0;
        for (const auto &cfg : configs) {
            const Capture a = in_process(cfg);
            const Capture b = in_process(cfg);
            ++compared;
            identical += (a.code == b.code && a.out == b.out && !a.out.empty()) ? 1 : 0;
            if (!cliPath.empty()) {
                std::string cmd = cliPath;
                for (const auto &arg : cfg) {
                    cmd += " '" + arg + "'";
                }
                const Capture p = spawn(cmd);
                const Capture q = spawn(cmd);
                ++compared;
                identical += (p.out == q.out && p.out == a.out && p.code == 0) ? 1 : 0;
            }
        }
        return Outcome{identical == compared,
                       std::to_string(identical) + "/" + std::to_string(compared) +
                           " repeated runs byte-identical" +
                           (cliPath.empty() ? " (in process only)" : " (in process and binary)")};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
