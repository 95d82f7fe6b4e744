// Command-line front end: every library capability behind one subcommand,
// flag-configured only, so any published comparison is reproducible from a
// single recorded command line.
//
// Exit codes: 0 success, 1 I/O failure, 2 usage or validation error.
// Data goes to --out (written atomically: temp file + rename) or to stdout
// when --out is omitted; stderr carries diagnostics only.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "logdmo/logdmo.hpp"

namespace {

using namespace logdmo;

OperatorKind parse_operator(const std::string& name) {
    if (name == "bale") return OperatorKind::BaleFull;
    if (name == "notfors") return OperatorKind::Notfors;
    if (name == "liner") return OperatorKind::LinerExact;
    if (name == "exact") return OperatorKind::ZhouExact;
    throw std::invalid_argument("unknown operator '" + name +
                                "' (expected bale|notfors|liner|exact)");
}

SingularPolicy parse_policy(const std::string& name) {
    if (name == "zero") return SingularPolicy::Zero;
    if (name == "hold") return SingularPolicy::HoldMagnitudeZeroPhase;
    throw std::invalid_argument("unknown policy '" + name +
                                "' (expected zero|hold)");
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp(target);
    tmp += ".tmp" + std::to_string(std::random_device{}());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open for writing: " + tmp.string());
        f.write(content.data(), std::streamsize(content.size()));
        f.flush();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ec2;
        fs::remove(tmp, ec2);
        throw IoError("rename failed: " + path + " (" + ec.message() + ")");
    }
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    write_file_atomic(out_path, content);
}

double validity_code(Validity v) {
    switch (v) {
        case Validity::Valid: return 0.0;
        case Validity::Singular: return 1.0;
        case Validity::OutOfDomain: return 2.0;
    }
    return 2.0;
}

// ---- phase -----------------------------------------------------------

struct PhaseOpts {
    std::string op;
    double omega = 1.0;
    double xi_max = 0.0;
    std::size_t samples = 0;
    double h = 1.0;
    std::string out;
};

void run_phase(const PhaseOpts& o) {
    const OperatorKind kind = parse_operator(o.op);
    if (o.samples < 2) throw std::invalid_argument("--samples must be >= 2");
    if (!(o.xi_max > 0.0)) throw std::invalid_argument("--xi-max must be > 0");
    if (o.omega == 0.0) throw std::invalid_argument("--omega must be nonzero");
    if (!(o.h > 0.0)) throw std::invalid_argument("--h must be > 0");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CsvTable t;
    t.header = {"xi", "phase", "amplitude", "validity"};
    for (std::size_t i = 0; i < o.samples; ++i) {
        const double xi = o.xi_max * double(i) / double(o.samples - 1);
        const double k = xi * o.omega / o.h;
        const PhaseResult r = evaluate(kind, {o.omega, k, o.h});
        if (r.validity == Validity::Valid) {
            t.rows.push_back({xi, r.phase, r.amplitude, 0.0});
        } else {
            t.rows.push_back({xi, nan, nan, validity_code(r.validity)});
        }
    }
    emit(o.out, format_csv(t));
}

// ---- impulse / apply -------------------------------------------------

struct DmoFlags {
    std::string policy = "zero";
    std::size_t n_tau = 0;
    long pad_x = -1;
    long pad_tau = -1;
    unsigned threads = 0;

    DmoConfig config(OperatorKind kind, std::optional<double> t_c) const {
        DmoConfig cfg;
        cfg.op = kind;
        cfg.t_c = t_c;
        cfg.n_tau = n_tau;
        cfg.policy = parse_policy(policy);
        if (pad_x >= 0) cfg.pad_x = std::size_t(pad_x);
        if (pad_tau >= 0) cfg.pad_tau = std::size_t(pad_tau);
        cfg.threads = threads;
        return cfg;
    }
};

struct ImpulseOpts {
    std::string op;
    double h = 500.0;
    double t = 1.0;
    double x = 0.0;
    std::size_t nt = 512;
    std::size_t nx = 256;
    double dt = 0.004;
    double dx = 12.5;
    double tc = 0.0;  // 0 = first sample
    double freq = 30.0;
    DmoFlags dmo{.n_tau = 2048};
    std::string dump_input;
    std::string out;
};

void run_impulse(const ImpulseOpts& o) {
    const OperatorKind kind = parse_operator(o.op);
    if (!(o.dt > 0.0) || !(o.dx > 0.0))
        throw std::invalid_argument("--dt and --dx must be > 0");
    if (o.nt < 2 || o.nx < 1)
        throw std::invalid_argument("grid too small (--nt >= 2, --nx >= 1)");
    // time starts one sample in; midpoint axis is centered on --x
    const double t_start = o.dt;
    const double x_start = o.x - o.dx * double(o.nx / 2);
    const Section geom =
        make_section(o.nt, o.nx, o.dt, o.dx, t_start, x_start, o.h);
    std::optional<double> t_c;
    if (o.tc != 0.0) t_c = o.tc;
    const Trace w = make_ricker(o.freq, o.dt);
    if (!o.dump_input.empty()) {
        // zero offset short-circuits the transform, leaving the painted input
        Section flat = geom;
        flat.h = 0.0;
        Section painted =
            impulse_response(flat, o.dmo.config(kind, t_c), o.t, o.x, w);
        painted.h = o.h;
        write_file_atomic(o.dump_input, serialize_section(painted));
    }
    const Section out =
        impulse_response(geom, o.dmo.config(kind, t_c), o.t, o.x, w);
    emit(o.out, serialize_section(out));
}

struct ApplyOpts {
    std::string op;
    std::string in;
    double tc = 0.0;
    DmoFlags dmo;
    std::string out;
};

void run_apply(const ApplyOpts& o) {
    const OperatorKind kind = parse_operator(o.op);
    const Section in = read_section(o.in);
    std::optional<double> t_c;
    if (o.tc != 0.0) t_c = o.tc;
    const Section out = run_dmo(in, o.dmo.config(kind, t_c));
    emit(o.out, serialize_section(out));
}

// ---- decompose -------------------------------------------------------

struct DecomposeOpts {
    std::string op;
    std::vector<double> xi_list;
    double omega = 1.0;
    double h = 500.0;
    std::string out;
};

void run_decompose(const DecomposeOpts& o) {
    const OperatorKind kind = parse_operator(o.op);
    if (o.xi_list.empty()) throw std::invalid_argument("--xi-list is empty");
    if (o.omega == 0.0) throw std::invalid_argument("--omega must be nonzero");
    if (!(o.h > 0.0)) throw std::invalid_argument("--h must be > 0");
    CsvTable t;
    t.header = {"xi", "space_shift", "time_shift", "space_phase", "time_phase",
                "total"};
    for (double xi : o.xi_list) {
        const double k = xi * o.omega / o.h;
        const PhaseDecomposition d = decompose(kind, o.omega, k, o.h);
        t.rows.push_back({xi, d.space_shift, d.time_shift, d.space_phase,
                          d.time_phase, d.total});
    }
    emit(o.out, format_csv(t));
}

// ---- asymptote -------------------------------------------------------

struct AsymptoteOpts {
    double xi_min = 1e-4;
    double xi_max = 1e4;
    std::size_t samples = 200;
    double omega = 1.0;
    std::string out;
};

void run_asymptote(const AsymptoteOpts& o) {
    if (!(o.xi_min > 0.0) || !(o.xi_max > o.xi_min))
        throw std::invalid_argument("need 0 < --xi-min < --xi-max");
    if (o.samples < 2) throw std::invalid_argument("--samples must be >= 2");
    std::vector<double> xis(o.samples);
    const double lmin = std::log(o.xi_min);
    const double lstep = (std::log(o.xi_max) - lmin) / double(o.samples - 1);
    for (std::size_t i = 0; i < o.samples; ++i) {
        xis[i] = std::exp(lmin + lstep * double(i));
    }
    const std::vector<OperatorKind> ops{
        OperatorKind::BaleFull, OperatorKind::Notfors, OperatorKind::LinerExact,
        OperatorKind::ZhouExact};
    const AsymptoticReport rep = asymptotic_report(ops, xis, o.omega);
    CsvTable t;
    t.header = {"xi", "correction"};
    for (const char* name : {"bale", "notfors", "liner", "exact"}) {
        t.header.push_back(std::string(name) + "_phase");
        t.header.push_back(std::string(name) + "_small_ratio");
        t.header.push_back(std::string(name) + "_large_ratio");
    }
    for (std::size_t i = 0; i < xis.size(); ++i) {
        std::vector<double> row{rep.xi[i], rep.correction[i]};
        for (const auto& e : rep.rows[i]) {
            row.push_back(e.phase);
            row.push_back(e.small_ratio);
            row.push_back(e.large_ratio);
        }
        t.rows.push_back(std::move(row));
    }
    emit(o.out, format_csv(t));
}

// ---- oracle ----------------------------------------------------------

struct OracleOpts {
    std::string method;
    double tn = 1.0;
    double h = 300.0;
    std::size_t samples = 81;
    std::size_t nt = 64;
    std::size_t nx = 64;
    double dt = 0.004;
    double dx = 12.5;
    std::size_t live = 5;
    unsigned long long seed = 1;
    std::size_t n_omega = 8;
    std::size_t n_k = 8;
    double omega_max = 200.0;
    double k_max = 0.12;
    unsigned threads = 0;
    std::string dump_input;
    std::string out;
};

Section synthesize_sparse(const OracleOpts& o) {
    Section s = make_section(o.nt, o.nx, o.dt, o.dx, o.dt,
                             -o.dx * double(o.nx / 2), o.h);
    std::mt19937_64 rng(o.seed);
    std::size_t placed = 0;
    while (placed < o.live) {
        const std::size_t it = std::size_t(rng() % o.nt);
        const std::size_t ix = std::size_t(rng() % o.nx);
        if (s.at(it, ix) != 0.0) continue;
        s.at(it, ix) = (rng() & 1) ? 1.0 : -1.0;
        ++placed;
    }
    return s;
}

void run_oracle(const OracleOpts& o) {
    if (o.method == "ellipse") {
        if (!(o.h > 0.0)) throw std::invalid_argument("--h must be > 0");
        if (o.samples < 2) throw std::invalid_argument("--samples must be >= 2");
        CsvTable t;
        t.header = {"offset", "t0"};
        for (std::size_t i = 0; i < o.samples; ++i) {
            const double dx =
                -o.h + 2.0 * o.h * double(i) / double(o.samples - 1);
            t.rows.push_back({dx, ellipse_point(o.tn, o.h, dx)});
        }
        emit(o.out, format_csv(t));
        return;
    }
    if (o.method != "hale" && o.method != "black" && o.method != "both") {
        throw std::invalid_argument(
            "unknown method '" + o.method +
            "' (expected hale|black|both|ellipse)");
    }
    if (o.live == 0 || o.live > o.nt * o.nx)
        throw std::invalid_argument("--live out of range");
    if (o.n_omega == 0 || o.n_k == 0)
        throw std::invalid_argument("bin axes must be nonempty");

    const Section s = synthesize_sparse(o);
    if (!o.dump_input.empty()) write_file_atomic(o.dump_input, serialize_section(s));

    std::vector<double> omegas(o.n_omega), ks(o.n_k);
    for (std::size_t j = 0; j < o.n_omega; ++j) {
        omegas[j] = o.omega_max * double(j + 1) / double(o.n_omega);
    }
    for (std::size_t m = 0; m < o.n_k; ++m) {
        ks[m] = (o.n_k == 1) ? 0.0
                             : -o.k_max + 2.0 * o.k_max * double(m) /
                                              double(o.n_k - 1);
    }

    CsvTable t;
    if (o.method != "both") {
        const WeightKind w =
            o.method == "hale" ? WeightKind::Hale : WeightKind::Black;
        const DirectSpectrum d = direct_dmo(s, w, omegas, ks, o.threads);
        t.header = {"omega", "k", "real", "imag", "magnitude", "phase"};
        for (std::size_t j = 0; j < o.n_omega; ++j) {
            for (std::size_t m = 0; m < o.n_k; ++m) {
                const auto z = d.at(j, m);
                t.rows.push_back({omegas[j], ks[m], z.real(), z.imag(),
                                  std::abs(z), std::arg(z)});
            }
        }
        emit(o.out, format_csv(t));
        return;
    }

    const DirectSpectrum dh = direct_dmo(s, WeightKind::Hale, omegas, ks, o.threads);
    const DirectSpectrum db = direct_dmo(s, WeightKind::Black, omegas, ks, o.threads);
    t.header = {"omega", "k", "mag_hale", "phase_hale", "mag_black",
                "phase_black", "phase_diff", "mag_ratio"};
    double max_diff = 0.0;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t j = 0; j < o.n_omega; ++j) {
        for (std::size_t m = 0; m < o.n_k; ++m) {
            const auto zh = dh.at(j, m);
            const auto zb = db.at(j, m);
            // wrap-safe angle between the two bins
            const double diff =
                (std::abs(zh) > 0.0 && std::abs(zb) > 0.0)
                    ? std::fabs(std::arg(zh * std::conj(zb)))
                    : nan;
            const double ratio =
                std::abs(zb) > 0.0 ? std::abs(zh) / std::abs(zb) : nan;
            if (diff == diff && diff > max_diff) max_diff = diff;
            t.rows.push_back({omegas[j], ks[m], std::abs(zh), std::arg(zh),
                              std::abs(zb), std::arg(zb), diff, ratio});
        }
    }
    std::fprintf(stderr, "max |phase difference| = %.17g rad over %zu bins\n",
                 max_diff, o.n_omega * o.n_k);
    emit(o.out, format_csv(t));
}

// ---- compare ---------------------------------------------------------

struct CompareOpts {
    std::string response;
    double tn = 0.0;
    double h = 0.0;
    double x_apex = 0.0;
    double window = 0.8;
    double floor_rel = 1e-2;
    std::string out;
};

void run_compare(const CompareOpts& o) {
    const Section s = read_section(o.response);
    const RidgeMetrics m =
        ridge_metrics(s, {o.tn, o.x_apex, o.h}, o.window, o.floor_rel);
    CsvTable t;
    t.header = {"x", "t_pick", "t_curve", "residual_samples", "rel_amp",
                "valid"};
    for (const auto& r : m.rows) {
        t.rows.push_back({r.x, r.t_pick, r.t_curve, r.residual_samples,
                          r.rel_amp, r.valid ? 1.0 : 0.0});
    }
    std::fprintf(stderr,
                 "picked %zu traces (%zu below floor); |residual| max %.3f "
                 "mean %.3f samples\n",
                 m.n_valid, m.n_missing, m.max_abs_residual,
                 m.mean_abs_residual);
    emit(o.out, format_csv(t));
}

// the half-offset flag is --h, so help must not claim the short -h
CLI::App* add_sub(CLI::App& app, const std::string& name,
                  const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print this help message and exit");
    return sub;
}

void add_dmo_flags(CLI::App* sub, DmoFlags& f) {
    sub->add_option("--policy", f.policy,
                    "singular-bin policy: zero|hold (default zero)");
    sub->add_option("--n-tau", f.n_tau,
                    "stretched samples per trace (0 = auto, 2x trace length)");
    sub->add_option("--pad-x", f.pad_x, "midpoint zero padding (-1 = auto, h/dx)");
    sub->add_option("--pad-tau", f.pad_tau,
                    "stretched-time zero padding (-1 = auto, n_tau/2)");
    sub->add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"log-stretch dip-moveout toolkit"};
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);

    auto phase = std::make_shared<PhaseOpts>();
    {
        auto* sub = add_sub(app, 
            "phase", "tabulate one operator's phase curve over xi");
        sub->add_option("--operator", phase->op, "bale|notfors|liner|exact")
            ->required();
        sub->add_option("--omega", phase->omega, "angular frequency (default 1)");
        sub->add_option("--xi-max", phase->xi_max, "sweep end (start is 0)")
            ->required();
        sub->add_option("--samples", phase->samples, "points in the sweep (>= 2)")
            ->required();
        sub->add_option("--h", phase->h, "half offset in meters (default 1)");
        sub->add_option("--out", phase->out, "output CSV (stdout if omitted)");
        sub->callback([phase] { run_phase(*phase); });
    }

    auto impulse = std::make_shared<ImpulseOpts>();
    {
        auto* sub = add_sub(app, 
            "impulse",
            "run one operator over a painted wavelet (defaults reproduce the "
            "512x256, h = 500 m reference experiment)");
        sub->add_option("--operator", impulse->op, "bale|notfors|liner|exact")
            ->required();
        sub->add_option("--h", impulse->h, "half offset, m (default 500)");
        sub->add_option("--t", impulse->t, "impulse time, s (default 1.0)");
        sub->add_option("--x", impulse->x, "impulse midpoint, m (default 0)");
        sub->add_option("--nt", impulse->nt, "time samples (default 512)");
        sub->add_option("--nx", impulse->nx, "traces (default 256)");
        sub->add_option("--dt", impulse->dt, "sample interval, s (default 0.004)");
        sub->add_option("--dx", impulse->dx, "trace spacing, m (default 12.5)");
        sub->add_option("--tc", impulse->tc,
                        "stretch reference time, s (0 = first sample)");
        sub->add_option("--freq", impulse->freq, "Ricker peak, Hz (default 30)");
        sub->add_option("--dump-input", impulse->dump_input,
                        "also write the painted input section here");
        add_dmo_flags(sub, impulse->dmo);
        sub->add_option("--out", impulse->out, "output section file")->required();
        sub->callback([impulse] { run_impulse(*impulse); });
    }

    auto apply = std::make_shared<ApplyOpts>();
    {
        auto* sub =
            add_sub(app, "apply", "run one operator over a stored section");
        sub->add_option("--operator", apply->op, "bale|notfors|liner|exact")
            ->required();
        sub->add_option("--in", apply->in, "input section file")->required();
        sub->add_option("--tc", apply->tc,
                        "stretch reference time, s (0 = first sample)");
        add_dmo_flags(sub, apply->dmo);
        sub->add_option("--out", apply->out, "output section file")->required();
        sub->callback([apply] { run_apply(*apply); });
    }

    auto decompose_o = std::make_shared<DecomposeOpts>();
    {
        auto* sub = add_sub(app, 
            "decompose", "split operator phases into space and time terms");
        sub->add_option("--operator", decompose_o->op, "bale|notfors|liner|exact")
            ->required();
        sub->add_option("--xi-list", decompose_o->xi_list,
                        "comma-separated xi values")
            ->required()
            ->delimiter(',');
        sub->add_option("--omega", decompose_o->omega,
                        "angular frequency (default 1)");
        sub->add_option("--h", decompose_o->h, "half offset, m (default 500)");
        sub->add_option("--out", decompose_o->out,
                        "output CSV (stdout if omitted)");
        sub->callback([decompose_o] { run_decompose(*decompose_o); });
    }

    auto asym = std::make_shared<AsymptoteOpts>();
    {
        auto* sub = add_sub(app, 
            "asymptote", "tabulate small- and wide-dip diagnostic ratios");
        sub->add_option("--xi-min", asym->xi_min, "sweep start (default 1e-4)");
        sub->add_option("--xi-max", asym->xi_max, "sweep end (default 1e4)");
        sub->add_option("--samples", asym->samples,
                        "log-spaced points (default 200)");
        sub->add_option("--omega", asym->omega, "angular frequency (default 1)");
        sub->add_option("--out", asym->out, "output CSV (stdout if omitted)");
        sub->callback([asym] { run_asymptote(*asym); });
    }

    auto oracle = std::make_shared<OracleOpts>();
    {
        auto* sub = add_sub(app, 
            "oracle",
            "desk-scale reference results straight from the integral forms");
        sub->add_option("--method", oracle->method, "hale|black|both|ellipse")
            ->required();
        sub->add_option("--tn", oracle->tn, "ellipse apex time, s (default 1)");
        sub->add_option("--h", oracle->h, "half offset, m (default 300)");
        sub->add_option("--samples", oracle->samples,
                        "ellipse points (default 81)");
        sub->add_option("--nt", oracle->nt, "section time samples (default 64)");
        sub->add_option("--nx", oracle->nx, "section traces (default 64)");
        sub->add_option("--dt", oracle->dt, "sample interval, s (default 0.004)");
        sub->add_option("--dx", oracle->dx, "trace spacing, m (default 12.5)");
        sub->add_option("--live", oracle->live,
                        "random unit spikes to place (default 5)");
        sub->add_option("--seed", oracle->seed, "spike placement seed (default 1)");
        sub->add_option("--n-omega", oracle->n_omega, "frequency bins (default 8)");
        sub->add_option("--n-k", oracle->n_k, "wavenumber bins (default 8)");
        sub->add_option("--omega-max", oracle->omega_max,
                        "largest angular frequency, rad/s (default 200)");
        sub->add_option("--k-max", oracle->k_max,
                        "largest |wavenumber|, rad/m (default 0.12)");
        sub->add_option("--threads", oracle->threads, "worker threads (0 = all)");
        sub->add_option("--dump-input", oracle->dump_input,
                        "also write the synthesized section here");
        sub->add_option("--out", oracle->out, "output CSV (stdout if omitted)");
        sub->callback([oracle] { run_oracle(*oracle); });
    }

    auto compare = std::make_shared<CompareOpts>();
    {
        auto* sub = add_sub(app, 
            "compare", "pick a response ridge and measure it against the ellipse");
        sub->add_option("--response", compare->response, "section file to pick")
            ->required();
        sub->add_option("--tn", compare->tn, "ellipse apex time, s")->required();
        sub->add_option("--h", compare->h, "half offset, m")->required();
        sub->add_option("--x-apex", compare->x_apex,
                        "apex midpoint, m (default 0)");
        sub->add_option("--window", compare->window,
                        "pick window as a fraction of h (default 0.8)");
        sub->add_option("--floor", compare->floor_rel,
                        "pick floor relative to the window peak (default 0.01)");
        sub->add_option("--out", compare->out, "output CSV (stdout if omitted)");
        sub->callback([compare] { run_compare(*compare); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const FormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
