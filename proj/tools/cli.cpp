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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "uqeq/error.hpp"
#include "uqeq/hilbert.hpp"
#include "uqeq/intelligent.hpp"
#include "uqeq/qubit.hpp"
#include "uqeq/relations.hpp"
#include "uqeq/spin.hpp"

namespace uqeq::cli {

namespace {

using hilbert::ComplexMatrix;
using hilbert::cplx;
using hilbert::CVector;
using hilbert::Observable;
using hilbert::PureState;
using Json = nlohmann::ordered_json;

constexpr double kInputHermitianTol = 1e-10;
constexpr double kInputNormTol = 1e-10;
constexpr double kPi = 3.14159265358979323846;

/// Bad input or configuration; maps to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json number(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return std::isnan(v) ? "nan" : "inf";
}

Json quantity(const relations::Quantity &q) {
    return q.ok() ? number(*q.value) : Json(q.status);
}

Json complex_json(cplx z) { return Json::array({number(z.real()), number(z.imag())}); }

cplx parse_complex(const Json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw InputError("complex entries must be [re, im]: got " + j.dump());
}

std::size_t parse_dim(const Json &j) {
    if (!j.contains("dim") || !j["dim"].is_number_integer()) {
        throw InputError("missing integer field \"dim\"");
    }
    const auto d = j["dim"].get<std::int64_t>();
    if (d < 1 || d > static_cast<std::int64_t>(hilbert::kMaxDim)) {
        throw InputError("dim " + std::to_string(d) + " outside [1, 64]");
    }
    return static_cast<std::size_t>(d);
}

Observable parse_observable(const Json &j, const std::string &name) {
    if (!j.is_object()) {
        throw InputError(name + ": operator must be an object");
    }
    const std::size_t d = parse_dim(j);
    const Json &rows = j.value("matrix", Json());
    if (!rows.is_array() || rows.size() != d) {
        throw InputError(name + ": \"matrix\" must have dim rows");
    }
    ComplexMatrix m(d);
    for (std::size_t r = 0; r < d; ++r) {
        if (!rows[r].is_array() || rows[r].size() != d) {
            throw InputError(name + ": row " + std::to_string(r) +
                             " must have dim entries");
        }
        for (std::size_t c = 0; c < d; ++c) {
            m(r, c) = parse_complex(rows[r][c]);
        }
    }
    try {
        return Observable(m, kInputHermitianTol);
    } catch (const Error &e) {
        throw InputError(name + ": " + e.what());
    }
}

PureState parse_state(const Json &j, const std::string &name) {
    if (!j.is_object()) {
        throw InputError(name + ": state must be an object");
    }
    const std::size_t d = parse_dim(j);
    const Json &amps = j.value("amplitudes", Json());
    if (!amps.is_array() || amps.size() != d) {
        throw InputError(name + ": \"amplitudes\" must have dim entries");
    }
    CVector v(d);
    for (std::size_t k = 0; k < d; ++k) {
        v[k] = parse_complex(amps[k]);
    }
    try {
        PureState checked(v, kInputNormTol);
        return PureState::normalized(checked.amplitudes());
    } catch (const Error &e) {
        throw InputError(name + ": " + e.what());
    }
}

Json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
}

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(std::string("missing field \"") + key + "\"");
    }
    return j[key];
}

void emit(const std::string &text, const std::string &outputPath,
          std::ostream &out) {
    if (outputPath.empty()) {
        out << text;
        return;
    }
    std::ofstream f(outputPath, std::ios::binary);
    if (!f || !(f << text)) {
        throw InputError("cannot write " + outputPath);
    }
}

// verify

struct Check {
    double maxResidual = 0.0;
    std::size_t count = 0;

    void add(double r) {
        maxResidual = std::max(maxResidual, std::isnan(r) ? HUGE_VAL : r);
        ++count;
    }
};

struct VerifyConfig {
    std::uint64_t seed = 0;
    std::vector<int> dims{2, 3, 4, 8, 16};
    int trials = 1000;
    double tol = 1e-9;
    std::string outputPath;
};

using relations::Sign;

void verify_trial(std::uint64_t key, std::size_t d,
                  std::map<std::string, Check> &checks) {
    namespace rel = relations;
    const Observable a = hilbert::sample_observable(hilbert::derive_seed(key, {0}), d);
    const Observable b = hilbert::sample_observable(hilbert::derive_seed(key, {1}), d);
    const PureState psi = hilbert::sample_state(hilbert::derive_seed(key, {2}), d);
    const auto basis = hilbert::complement_basis(psi);
    const auto other = hilbert::rotate_basis(
        basis, hilbert::sample_unitary(hilbert::derive_seed(key, {3}), d - 1));

    const rel::PairMoments pm = rel::pair_moments(a, b, psi);
    const double w = pm.varA + pm.varB;
    const double u = pm.varA * pm.varB;

    for (const Sign s : {Sign::Plus, Sign::Minus}) {
        const auto t1 = rel::theorem1_equality(a, b, psi, basis, s);
        checks["theorem1"].add(t1.residual);
        const auto t1b = rel::theorem1_equality(a, b, psi, other, s);
        checks["basisIndependence"].add(std::abs(t1.rhs - t1b.rhs));

        const auto prefix = rel::hierarchy_bounds(a, b, psi, basis, s);
        double worst = std::abs(prefix.back() - w);
        for (std::size_t k = 0; k < prefix.size(); ++k) {
            worst = std::max(worst, prefix[k] - w);
            if (k > 0) {
                worst = std::max(worst, prefix[k - 1] - prefix[k]);
            }
        }
        checks["hierarchy"].add(std::max(worst, 0.0));

        const PureState opt = rel::optimal_orthogonal_state(a, b, psi, s);
        checks["tightnessL1"].add(
            std::abs(rel::maccone_pati_l1(a, b, psi, opt, s) - w));

        if (std::abs(pm.expC) > 1e-6) {
            checks["theorem2"].add(
                rel::theorem2_equality(a, b, psi, basis, s).residual);
            const PureState opt1 = rel::theta1_optimal_state(a, b, psi, s);
            checks["tightnessAmendedRUR"].add(std::abs(
                rel::amended_rur(a, b, psi, opt1, s).bound - std::sqrt(u)));
        }
    }
    checks["parallelogram"].add(std::abs(rel::maccone_pati_l2(a, b, psi) +
                                         rel::maccone_pati_l3(a, b, psi) - w));
    const double root = 2.0 * std::sqrt(u);
    checks["chain"].add(
        std::max({0.0, root - w, std::abs(pm.expC) - root}));
    checks["upsilon"].add(std::max(
        0.0, -(u - pm.expC * pm.expC / 4.0 - pm.expF * pm.expF / 4.0)));

    const rel::PairMoments sw = rel::pair_moments(b, a, psi);
    checks["symmetry"].add(std::max(
        {std::abs(sw.varA + sw.varB - w), std::abs(sw.varA * sw.varB - u),
         std::abs(rel::maccone_pati_l2(b, a, psi) -
                  rel::maccone_pati_l2(a, b, psi)),
         std::abs(rel::maccone_pati_l3(b, a, psi) -
                  rel::maccone_pati_l3(a, b, psi)),
         std::abs(std::abs(sw.expC) - std::abs(pm.expC)),
         std::abs(sw.expF - pm.expF)}));
}

int cmd_verify(const VerifyConfig &cfg, std::ostream &out) {
    static const char *const kOrder[] = {
        "theorem1",    "theorem2",      "basisIndependence",
        "hierarchy",   "parallelogram", "chain",
        "upsilon",     "tightnessL1",   "tightnessAmendedRUR",
        "symmetry"};
    std::map<std::string, Check> checks;
    for (const char *name : kOrder) {
        checks[name];
    }
    for (const int d : cfg.dims) {
        for (int t = 0; t < cfg.trials; ++t) {
            const std::uint64_t key = hilbert::derive_seed(
                cfg.seed, {static_cast<std::uint64_t>(d),
                           static_cast<std::uint64_t>(t)});
            verify_trial(key, static_cast<std::size_t>(d), checks);
        }
    }
    Json summary;
    summary["seed"] = cfg.seed;
    summary["dims"] = cfg.dims;
    summary["trials"] = cfg.trials;
    summary["tol"] = cfg.tol;
    Json list = Json::object();
    bool pass = true;
    for (const char *name : kOrder) {
        const Check &c = checks[name];
        const bool ok = c.maxResidual <= cfg.tol;
        pass = pass && ok;
        list[name] = {{"maxResidual", number(c.maxResidual)},
                      {"count", c.count},
                      {"pass", ok}};
    }
    summary["checks"] = list;
    summary["pass"] = pass;
    emit(summary.dump(2) + "\n", cfg.outputPath, out);
    return pass ? kSuccess : kFailure;
}

// bounds

Json report_json(const relations::UncertaintyReport &r) {
    const relations::PairMoments &p = r.pair;
    Json j;
    j["meanA"] = number(p.meanA);
    j["meanB"] = number(p.meanB);
    j["varA"] = number(p.varA);
    j["varB"] = number(p.varB);
    j["expC"] = number(p.expC);
    j["expF"] = number(p.expF);
    j["sumW"] = number(r.sumW);
    j["prodU"] = number(r.prodU);
    j["rur"] = number(r.rur);
    j["surBound"] = number(r.surBound);
    j["upsilon"] = number(r.upsilon);
    j["l1Plus"] = quantity(r.l1Plus);
    j["l1Minus"] = quantity(r.l1Minus);
    j["l2"] = number(r.l2);
    j["l3"] = number(r.l3);
    j["l2Prime"] = number(r.l2Prime);
    j["amendedRURPlus"] = quantity(r.amendedRURPlus);
    j["amendedRURMinus"] = quantity(r.amendedRURMinus);
    j["theta1"] = quantity(r.theta1);
    j["theta2"] = quantity(r.theta2);
    j["theta3"] = quantity(r.theta3);
    j["theta3Bound"] = quantity(r.theta3Bound);
    j["vaidmanDeviationA"] = quantity(r.vaidmanDeviationA);
    j["vaidmanDeviationB"] = quantity(r.vaidmanDeviationB);
    return j;
}

int cmd_bounds(const std::string &inputPath, const std::string &outputPath,
               std::ostream &out) {
    const Json in = read_json(inputPath);
    const Observable a = parse_observable(field(in, "A"), "A");
    const Observable b = parse_observable(field(in, "B"), "B");
    const PureState psi = parse_state(field(in, "psi"), "psi");
    if (a.dim() != b.dim() || a.dim() != psi.dim()) {
        throw InputError("A, B and psi must have the same dim");
    }
    if (a.dim() < 2) {
        throw InputError("dim must be at least 2");
    }
    emit(report_json(relations::uncertainty_report(a, b, psi)).dump(2) + "\n",
         outputPath, out);
    return kSuccess;
}

// qubit-grid

int cmd_qubit_grid(double phi, int nTheta, int nVarphi,
                   const std::string &outputPath, std::ostream &out) {
    if (nTheta < 2 || nVarphi < 2) {
        throw InputError("--n-theta and --n-varphi must be at least 2");
    }
    qubit::Grid grid;
    try {
        grid = qubit::grid_scan(phi, static_cast<std::size_t>(nTheta),
                                static_cast<std::size_t>(nVarphi));
    } catch (const Error &e) {
        throw InputError(e.what());
    }
    std::ostringstream csv;
    qubit::write_grid_csv(grid, csv);
    emit(csv.str(), outputPath, out);
    return kSuccess;
}

// intelligent

Json optional_number(const std::optional<double> &v, const char *status) {
    return v ? number(*v) : Json(status);
}

int cmd_intelligent(const std::string &inputPath, cplx gamma,
                    const std::string &outputPath, std::ostream &out) {
    const Json in = read_json(inputPath);
    const Observable a = parse_observable(field(in, "A"), "A");
    const Observable b = parse_observable(field(in, "B"), "B");
    if (a.dim() != b.dim()) {
        throw InputError("A and B must have the same dim");
    }
    const auto states = intelligent::solve_intelligent_states(a, b, gamma);
    Json list = Json::array();
    for (const auto &s : states) {
        const auto &c = s.classification;
        Json amps = Json::array();
        for (const cplx z : s.state.amplitudes()) {
            amps.push_back(complex_json(z));
        }
        Json j;
        j["eigenvalue"] = complex_json(s.eigenvalue);
        j["eigenResidual"] = number(s.eigenResidual);
        j["amplitudes"] = amps;
        j["deviationA"] = number(s.deviationA);
        j["deviationB"] = number(s.deviationB);
        j["deviationStatus"] =
            (s.deviationA < 1e-10 || s.deviationB < 1e-10)
                ? std::string(to_string(ErrorKind::ZeroDeviation))
                : std::string("ok");
        j["isGIS"] = c.isGIS;
        j["isOIS"] = c.isOIS;
        j["gisResidual"] = optional_number(
            c.gisResidual, to_string(ErrorKind::EigenstateOfB).data());
        j["gisGamma"] = c.gamma ? complex_json(*c.gamma)
                                : Json(to_string(ErrorKind::EigenstateOfB));
        j["criticalProductResidual"] =
            optional_number(c.criticalProductResidual,
                            to_string(ErrorKind::ZeroDeviation).data());
        j["criticalSumResidual"] = number(c.criticalSumResidual);
        j["ratioMismatch"] = s.ratioChecked
                                 ? optional_number(s.ratioMismatch, "")
                                 : Json(to_string(ErrorKind::ZeroDeviation));
        list.push_back(j);
    }
    Json doc;
    doc["gamma"] = complex_json(gamma);
    doc["states"] = list;
    emit(doc.dump(2) + "\n", outputPath, out);
    return kSuccess;
}

// spin

spin::Vec3 parse_axis(const std::string &token) {
    static const std::map<std::string, spin::Vec3> kNamed = {
        {"x", {1, 0, 0}},  {"y", {0, 1, 0}},  {"z", {0, 0, 1}},
        {"-x", {-1, 0, 0}}, {"-y", {0, -1, 0}}, {"-z", {0, 0, -1}}};
    if (const auto it = kNamed.find(token); it != kNamed.end()) {
        return it->second;
    }
    spin::Vec3 v{};
    std::istringstream in(token);
    char sep = 0;
    if ((in >> v[0] >> sep >> v[1] >> sep >> v[2]) && in.eof()) {
        return v;
    }
    throw InputError("axis must be x, y, z, -x, -y, -z or a,b,c: " + token);
}

struct SpinConfig {
    int n = 0;
    std::vector<double> css{0.0, 0.0};
    double mu = 0.0;
    std::vector<std::string> frame;
    std::vector<double> sweep;
    bool degrees = false;
    std::string outputPath;
};

Json spin_report_json(const spin::SqueezingReport &r) {
    Json j;
    j["status"] = "ok";
    j["xiH2"] = number(r.xiH2);
    j["xiR2"] = number(r.xiR2);
    j["chi2"] = number(r.chi2);
    j["qfi"] = number(r.qfi);
    j["theta1"] = number(r.theta1);
    j["generalizedBound"] = number(r.generalizedBound);
    j["meanJn2"] = number(r.meanJn2);
    j["varJn1"] = number(r.varJn1);
    j["varJn3"] = number(r.varJn3);
    return j;
}

bool reportable(const Error &e) {
    return e.kind() == ErrorKind::PolarizationUndefined ||
           e.kind() == ErrorKind::DegenerateDirection;
}

int cmd_spin(const SpinConfig &cfg, std::ostream &out) {
    if (cfg.n < 1 || cfg.n > spin::kMaxParticles) {
        throw InputError("--n must be in [1, 63]");
    }
    const double scale = cfg.degrees ? kPi / 180.0 : 1.0;
    const double theta0 = cfg.css[0] * scale;
    const double varphi0 = cfg.css[1] * scale;
    const spin::SpinSystem sys = spin::build_spin(cfg.n);

    if (!cfg.sweep.empty()) {
        const double count = cfg.sweep[2];
        if (count < 1 || count != std::floor(count)) {
            throw InputError("--oat-sweep count must be a positive integer");
        }
        try {
            const auto rows =
                spin::oat_sweep(sys, theta0, varphi0, cfg.sweep[0],
                                cfg.sweep[1], static_cast<std::size_t>(count));
            std::ostringstream csv;
            spin::write_sweep_csv(rows, csv);
            emit(csv.str(), cfg.outputPath, out);
        } catch (const Error &e) {
            if (!reportable(e)) {
                throw;
            }
            emit(Json{{"status", to_string(e.kind())}}.dump(2) + "\n",
                 cfg.outputPath, out);
        }
        return kSuccess;
    }

    const PureState psi = spin::one_axis_twist(sys, theta0, varphi0, cfg.mu);
    Json doc;
    try {
        spin::Frame frame{};
        if (cfg.frame.empty()) {
            frame = spin::optimal_frame(sys, psi);
        } else {
            frame = {parse_axis(cfg.frame[0]), parse_axis(cfg.frame[1]),
                     parse_axis(cfg.frame[2])};
        }
        try {
            doc = spin_report_json(spin::squeezing_report(sys, psi, frame));
        } catch (const Error &e) {
            if (e.kind() == ErrorKind::InvalidArgument) {
                throw InputError(e.what());
            }
            throw;
        }
    } catch (const Error &e) {
        if (!reportable(e)) {
            throw;
        }
        doc = Json{{"status", to_string(e.kind())}};
    }
    emit(doc.dump(2) + "\n", cfg.outputPath, out);
    return kSuccess;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
    CLI::App app{"Variance uncertainty relations toolkit", "uqeq"};
    app.require_subcommand(1);

    VerifyConfig vcfg;
    auto *verify = app.add_subcommand(
        "verify", "Check the identities and inequalities on random triples");
    verify->add_option("--seed", vcfg.seed, "Base seed")->capture_default_str();
    verify->add_option("--dims", vcfg.dims, "Hilbert space dimensions")
        ->check(CLI::Range(2, 64))
        ->capture_default_str();
    verify->add_option("--trials", vcfg.trials, "Trials per dimension")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--tol", vcfg.tol, "Pass threshold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("-o,--output", vcfg.outputPath, "Output file");

    std::string boundsInput;
    std::string boundsOutput;
    auto *bounds = app.add_subcommand("bounds", "Report every bound for A, B, psi");
    bounds->add_option("input", boundsInput, "JSON with A, B and psi")
        ->required();
    bounds->add_option("-o,--output", boundsOutput, "Output file");

    double phi = 0.0;
    int nTheta = 181;
    int nVarphi = 361;
    bool gridDegrees = false;
    std::string gridOutput;
    auto *grid = app.add_subcommand("qubit-grid", "U1/U2 over the Bloch sphere");
    grid->add_option("--phi", phi, "Pair angle")->capture_default_str();
    grid->add_option("--n-theta", nTheta, "Polar samples")->capture_default_str();
    grid->add_option("--n-varphi", nVarphi, "Azimuthal samples")
        ->capture_default_str();
    grid->add_flag("--degrees", gridDegrees, "Angles in degrees");
    grid->add_option("-o,--output", gridOutput, "Output file");

    std::string intelInput;
    std::string intelOutput;
    double gammaRe = 1.0;
    std::vector<double> complexGamma;
    auto *intel = app.add_subcommand("intelligent",
                                     "Eigenstates of A + i gamma B, classified");
    intel->add_option("input", intelInput, "JSON with A and B")->required();
    auto *gammaOpt =
        intel->add_option("--gamma", gammaRe, "Real gamma")->capture_default_str();
    intel->add_option("--complex-gamma", complexGamma, "Complex gamma: re im")
        ->expected(2)
        ->excludes(gammaOpt);
    intel->add_option("-o,--output", intelOutput, "Output file");

    SpinConfig scfg;
    auto *spinCmd = app.add_subcommand("spin", "Spin squeezing figures");
    spinCmd->add_option("--n", scfg.n, "Number of particles")->required();
    spinCmd->add_option("--css", scfg.css, "Coherent state angles: theta varphi")
        ->expected(2);
    spinCmd->add_option("--mu", scfg.mu, "One-axis twisting strength");
    spinCmd->add_option("--frame", scfg.frame, "Axes n1 n2 n3")->expected(3);
    auto *sweepOpt = spinCmd->add_option("--oat-sweep", scfg.sweep,
                                         "Twisting sweep: lo hi count")
                         ->expected(3);
    sweepOpt->excludes("--frame")->excludes("--mu");
    spinCmd->add_flag("--degrees", scfg.degrees, "Angles in degrees");
    spinCmd->add_option("-o,--output", scfg.outputPath, "Output file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*verify) {
            return cmd_verify(vcfg, out);
        }
        if (*bounds) {
            return cmd_bounds(boundsInput, boundsOutput, out);
        }
        if (*grid) {
            return cmd_qubit_grid(gridDegrees ? phi * kPi / 180.0 : phi, nTheta,
                                  nVarphi, gridOutput, out);
        }
        if (*intel) {
            const cplx gamma = complexGamma.empty()
                                   ? cplx{gammaRe, 0.0}
                                   : cplx{complexGamma[0], complexGamma[1]};
            return cmd_intelligent(intelInput, gamma, intelOutput, out);
        }
        if (*spinCmd) {
            return cmd_spin(scfg, out);
        }
    } catch (const InputError &e) {
        err << "uqeq: input error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error &e) {
        err << "uqeq: " << e.what() << '\n';
        return e.kind() == ErrorKind::InvalidArgument ||
                       e.kind() == ErrorKind::SizeLimit
                   ? kUsage
                   : kFailure;
    } catch (const std::exception &e) {
        err << "uqeq: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

} // namespace uqeq::cli
