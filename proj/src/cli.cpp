#include "repulse/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "repulse/io.hpp"
#include "repulse/mehler.hpp"
#include "repulse/norms.hpp"
#include "repulse/pairs.hpp"
#include "repulse/solver.hpp"
#include "repulse/spectral.hpp"

namespace repulse::cli {

namespace {

enum class ParamType { integer, real, text };

struct ParamSpec {
    const char* name;
    ParamType type;
    const char* def;
    const char* help;
};

const char* type_name(ParamType t) {
    switch (t) {
        case ParamType::integer: return "integer";
        case ParamType::real: return "real";
        default: return "text";
    }
}

// One command per estimate family; every parameter has a documented default.
const std::map<std::string, std::vector<ParamSpec>>& registry() {
    static const std::map<std::string, std::vector<ParamSpec>> reg = {
        {"propagate",
         {{"n", ParamType::integer, "1", "space dimension (1 or 2)"},
          {"tau", ParamType::real, "1", "repulsive strength"},
          {"sigma", ParamType::real, "0.5", "propagation time"},
          {"L", ParamType::real, "8", "grid half-width"},
          {"N", ParamType::integer, "256", "points per axis (power of two)"},
          {"a", ParamType::real, "1", "gaussian width parameter"},
          {"center", ParamType::real, "0", "gaussian center (axis 0)"},
          {"momentum", ParamType::real, "0", "gaussian momentum (axis 0)"}}},
        {"decay-fit",
         {{"n", ParamType::integer, "1", "space dimension (1 or 2)"},
          {"tau", ParamType::real, "1", "repulsive strength"},
          {"t_min", ParamType::real, "3", "first sample time"},
          {"t_max", ParamType::real, "8", "last sample time"},
          {"t_step", ParamType::real, "0.5", "sample spacing"},
          {"L", ParamType::real, "16", "grid half-width"},
          {"N", ParamType::integer, "512", "points per axis"},
          {"a", ParamType::real, "1", "gaussian width parameter"}}},
        {"strichartz",
         {{"n", ParamType::integer, "1", "space dimension"},
          {"tau", ParamType::real, "1", "repulsive strength"},
          {"q", ParamType::real, "2", "time exponent (inf allowed)"},
          {"r", ParamType::real, "inf", "space exponent (inf allowed)"},
          {"T", ParamType::real, "6.4", "window length"},
          {"samples", ParamType::integer, "128", "recorded samples across the window"},
          {"potential", ParamType::text, "zero", "zero or power"},
          {"c", ParamType::real, "1", "potential amplitude"},
          {"delta", ParamType::real, "1", "potential decay exponent"},
          {"dt", ParamType::real, "0.000122", "step size target (potential runs)"},
          {"L", ParamType::real, "16", "grid half-width"},
          {"N", ParamType::integer, "8192", "points per axis"},
          {"a", ParamType::real, "1", "gaussian width parameter"}}},
        {"region",
         {{"n", ParamType::integer, "3", "space dimension for the classifier"},
          {"resolution", ParamType::integer, "64", "lattice resolution over [0,1/2]^2"}}},
        {"resolvent-scan",
         {{"tau", ParamType::real, "1", "repulsive strength"},
          {"potential", ParamType::text, "power", "zero or power"},
          {"c", ParamType::real, "1", "potential amplitude"},
          {"delta", ParamType::real, "1", "potential decay exponent"},
          {"L", ParamType::real, "8", "grid half-width"},
          {"N", ParamType::integer, "512", "points per axis"},
          {"lambda_min", ParamType::real, "-20", "first spectral parameter"},
          {"lambda_max", ParamType::real, "20", "last spectral parameter"},
          {"lambda_count", ParamType::integer, "41", "number of lambda samples"},
          {"nu", ParamType::real, "1", "imaginary shift"},
          {"nu0", ParamType::real, "1", "ceiling for nu"},
          {"sign", ParamType::integer, "1", "+1 or -1 branch"},
          {"weight", ParamType::text, "potential", "potential (|V|^{1/2}) or x (<x>^{-theta})"},
          {"weight_exponent", ParamType::real, "0.5", "theta for the x weight"},
          {"min_certificate", ParamType::real, "0", "resolution floor (0 disables)"}}},
        {"high-energy",
         {{"tau", ParamType::real, "1", "repulsive strength"},
          {"L", ParamType::real, "16", "grid half-width"},
          {"N", ParamType::integer, "2048", "points per axis"},
          {"thetas", ParamType::text, "0.5,1,2", "comma-separated weight exponents in [0,2]"},
          {"lambda_min", ParamType::real, "50", "first lambda (log-spaced sweep)"},
          {"lambda_max", ParamType::real, "800", "last lambda"},
          {"lambda_count", ParamType::integer, "5", "number of lambdas"},
          {"nu", ParamType::real, "8", "imaginary shift"}}},
        {"smoothing",
         {{"tau", ParamType::real, "0.3", "repulsive strength"},
          {"potential", ParamType::text, "power", "zero or power"},
          {"c", ParamType::real, "0.3", "potential amplitude"},
          {"delta", ParamType::real, "1", "potential decay exponent"},
          {"T", ParamType::real, "4", "half window; integral runs over [-T, T]"},
          {"dt", ParamType::real, "0.0009765625", "step size target"},
          {"L", ParamType::real, "64", "grid half-width"},
          {"N", ParamType::integer, "2048", "points per axis"},
          {"a", ParamType::real, "0.3", "gaussian width parameter"}}},
        {"duhamel",
         {{"tau", ParamType::real, "1", "repulsive strength"},
          {"potential", ParamType::text, "power", "zero or power"},
          {"c", ParamType::real, "1", "potential amplitude"},
          {"delta", ParamType::real, "1", "potential decay exponent"},
          {"t", ParamType::real, "1", "final time"},
          {"quad_points", ParamType::integer, "32", "trapezoid intervals in s"},
          {"dt", ParamType::real, "0.0009765625", "step size target"},
          {"L", ParamType::real, "24", "grid half-width"},
          {"N", ParamType::integer, "16384", "points per axis"},
          {"a", ParamType::real, "1", "gaussian width parameter"}}},
        {"weighted-decay",
         {{"n", ParamType::integer, "1", "space dimension"},
          {"tau", ParamType::real, "1", "repulsive strength"},
          {"rho", ParamType::real, "1", "weight exponent"},
          {"Q", ParamType::real, "2", "decay exponent parameter (Q > n, rho Q > n)"},
          {"sigma_min", ParamType::real, "0.5", "first sigma"},
          {"sigma_max", ParamType::real, "10.5", "last sigma"},
          {"sigma_step", ParamType::real, "0.1", "sigma spacing"},
          {"L", ParamType::real, "16", "grid half-width"},
          {"N", ParamType::integer, "1024", "points per axis"},
          {"a", ParamType::real, "1", "gaussian width parameter"}}},
    };
    return reg;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

long long parse_integer(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long long out = 0;
    try {
        out = std::stoll(v, &pos);
    } catch (...) {
        throw argument_error("key '" + key + "': expected integer, got '" + v + "'");
    }
    if (pos != v.size()) throw argument_error("key '" + key + "': expected integer, got '" + v + "'");
    return out;
}

double parse_real(const std::string& key, const std::string& v) {
    if (v == "inf") return inf;
    if (v == "-inf") return -inf;
    std::size_t pos = 0;
    double out = 0;
    try {
        out = std::stod(v, &pos);
    } catch (...) {
        throw argument_error("key '" + key + "': expected real, got '" + v + "'");
    }
    if (pos != v.size()) throw argument_error("key '" + key + "': expected real, got '" + v + "'");
    return out;
}

void validate_value(const ParamSpec& spec, const std::string& value) {
    switch (spec.type) {
        case ParamType::integer: parse_integer(spec.name, value); break;
        case ParamType::real: parse_real(spec.name, value); break;
        case ParamType::text: break;
    }
}

const std::vector<ParamSpec>& specs_for(const std::string& command) {
    const auto it = registry().find(command);
    if (it == registry().end()) throw argument_error("unknown command '" + command + "'");
    return it->second;
}

const ParamSpec* find_spec(const std::vector<ParamSpec>& specs, const std::string& key) {
    for (const auto& s : specs)
        if (key == s.name) return &s;
    return nullptr;
}

// Typed access into a resolved RunConfig.
struct Params {
    const RunConfig& cfg;
    long long geti(const std::string& key) const { return parse_integer(key, cfg.parameters.at(key)); }
    double getr(const std::string& key) const { return parse_real(key, cfg.parameters.at(key)); }
    std::string gets(const std::string& key) const { return cfg.parameters.at(key); }
};

PotentialSpec potential_from(const Params& p) {
    const std::string kind = p.gets("potential");
    if (kind == "zero") return PotentialSpec::make_zero();
    if (kind == "power") return PotentialSpec::power(p.getr("c"), p.getr("delta"));
    throw argument_error("key 'potential': expected zero or power, got '" + kind + "'");
}

void parallel_for(int jobs, int count, const std::function<void(int)>& body) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex err_mutex;
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    body(i);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!failed.exchange(true)) first_error = e.what();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failed.load()) throw numeric_error(first_error);
}

std::string csv_bool(bool b) { return b ? "1" : "0"; }

// ---- command handlers ----------------------------------------------------

using Artifacts = std::vector<std::string>;

Artifacts run_propagate(const RunConfig& cfg) {
    const Params p{cfg};
    const Grid grid(static_cast<int>(p.geti("n")), p.getr("L"), static_cast<int>(p.geti("N")));
    const int n = grid.dimension();
    std::vector<double> center(n, 0.0), momentum(n, 0.0);
    center[0] = p.getr("center");
    momentum[0] = p.getr("momentum");
    const WaveFunction f = make_gaussian(grid, center, p.getr("a"), momentum);
    const WaveFunction out = propagate_exact(f, PropagatorParams(p.getr("tau"), p.getr("sigma")));

    std::ostringstream csv;
    const auto x = grid.axis_nodes();
    const int N = grid.points_per_axis();
    if (n == 1) {
        csv << "x,re,im\n";
        for (int j = 0; j < N; ++j)
            csv << format_real(x[j]) << "," << format_real(out.values[j].real()) << ","
                << format_real(out.values[j].imag()) << "\n";
    } else {
        csv << "x0,x1,re,im\n";
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                const auto& z = out.values[static_cast<std::size_t>(i) * N + j];
                csv << format_real(x[i]) << "," << format_real(x[j]) << "," << format_real(z.real())
                    << "," << format_real(z.imag()) << "\n";
            }
    }
    write_text_file(cfg.output_dir + "/state.csv", csv.str());

    JsonObject j;
    j.set("sigma", p.getr("sigma"));
    j.set("l2_in", lr_norm(f, 2.0));
    j.set("l2_out", lr_norm(out, 2.0));
    j.set("linf_out", lr_norm(out, inf));
    j.write(cfg.output_dir + "/summary.json");
    return {"state.csv", "summary.json"};
}

Artifacts run_decay_fit(const RunConfig& cfg) {
    const Params p{cfg};
    const Grid grid(static_cast<int>(p.geti("n")), p.getr("L"), static_cast<int>(p.geti("N")));
    const int n = grid.dimension();
    const WaveFunction f = make_gaussian(grid, std::vector<double>(n, 0.0), p.getr("a"),
                                         std::vector<double>(n, 0.0));
    std::vector<double> times;
    for (double t = p.getr("t_min"); t <= p.getr("t_max") + 1e-12; t += p.getr("t_step"))
        times.push_back(t);
    const HamiltonianSpec h(p.getr("tau"));
    const DecayFitResult res = decay_fit(f, h, times);

    std::ostringstream csv;
    csv << "sigma,value\n";
    for (std::size_t i = 0; i < res.series.times.size(); ++i)
        csv << format_real(res.series.times[i]) << "," << format_real(res.series.norms[i]) << "\n";
    write_text_file(cfg.output_dir + "/decay.csv", csv.str());

    JsonObject j;
    j.set("rate", res.fit.fitted_rate);
    j.set("intercept", res.intercept);
    j.set("r_squared", res.fit.r_squared);
    j.set("reference_rate", res.fit.reference_rate);
    j.write(cfg.output_dir + "/fit.json");
    return {"decay.csv", "fit.json"};
}

Artifacts run_strichartz(const RunConfig& cfg) {
    const Params p{cfg};
    const Grid grid(static_cast<int>(p.geti("n")), p.getr("L"), static_cast<int>(p.geti("N")));
    const int n = grid.dimension();
    const double tau = p.getr("tau");
    const double T = p.getr("T");
    const int samples = static_cast<int>(p.geti("samples"));
    if (samples < 2) throw argument_error("key 'samples': need >= 2");
    const WaveFunction f = make_gaussian(grid, std::vector<double>(n, 0.0), p.getr("a"),
                                         std::vector<double>(n, 0.0));
    const PotentialSpec pot = potential_from(p);

    TimeSeries series;
    Artifacts artifacts;
    if (pot.kind == PotentialSpec::Kind::zero) {
        series.times.push_back(0.0);
        series.states.push_back(f);
        for (int k = 1; k <= samples; ++k) {
            const double t = T * k / samples;
            series.times.push_back(t);
            series.states.push_back(propagate_exact(f, PropagatorParams(tau, t)));
        }
    } else {
        const double dt_target = p.getr("dt");
        const int per = std::max(1, static_cast<int>(std::lround(T / (samples * dt_target))));
        const double dt = T / (samples * per);
        EvolutionPlan plan(HamiltonianSpec(tau, pot), dt, samples * per, per);
        const EvolveResult run = evolve(f, plan);
        series = run.series;

        std::ostringstream evo;
        evo << "t,l2,linf,boundary_mass\n";
        for (std::size_t i = 0; i < run.series.times.size(); ++i)
            evo << format_real(run.series.times[i]) << "," << format_real(lr_norm(run.series.states[i], 2.0))
                << "," << format_real(lr_norm(run.series.states[i], inf)) << ","
                << format_real(run.boundary_mass[i]) << "\n";
        write_text_file(cfg.output_dir + "/evolve.csv", evo.str());
        artifacts.push_back("evolve.csv");
    }

    const double q = p.getr("q");
    const double r = p.getr("r");
    std::ostringstream csv;
    csv << "t,norm,r\n";
    for (std::size_t i = 0; i < series.times.size(); ++i)
        csv << format_real(series.times[i]) << "," << format_real(lr_norm(series.states[i], r)) << ","
            << format_real(r) << "\n";
    write_text_file(cfg.output_dir + "/norms.csv", csv.str());
    artifacts.insert(artifacts.begin(), "norms.csv");

    const StrichartzResult res = strichartz_norm(series, q, r);
    JsonObject j;
    j.set("q", q);
    j.set("r", r);
    j.set("value", res.value);
    j.set("last_doubling_increment", res.last_doubling_increment);
    j.write(cfg.output_dir + "/strichartz.json");
    artifacts.push_back("strichartz.json");
    return artifacts;
}

Artifacts run_region(const RunConfig& cfg) {
    const Params p{cfg};
    const auto samples = sample_region(static_cast<int>(p.geti("n")),
                                       static_cast<int>(p.geti("resolution")));
    std::ostringstream csv;
    csv << "inv_q,inv_r,admissible,on_boundary,is_endpoint\n";
    for (const auto& s : samples)
        csv << format_real(s.inv_q.to_double()) << "," << format_real(s.inv_r.to_double()) << ","
            << csv_bool(s.verdict.admissible) << "," << csv_bool(s.verdict.on_boundary) << ","
            << csv_bool(s.verdict.is_endpoint) << "\n";
    write_text_file(cfg.output_dir + "/region.csv", csv.str());
    return {"region.csv"};
}

Artifacts run_resolvent_scan(const RunConfig& cfg) {
    const Params p{cfg};
    const Grid grid(1, p.getr("L"), static_cast<int>(p.geti("N")));
    const HamiltonianSpec spec(p.getr("tau"), potential_from(p));
    const DiscreteHamiltonian h = assemble(grid, spec);

    const int count = static_cast<int>(p.geti("lambda_count"));
    if (count < 1) throw argument_error("key 'lambda_count': need >= 1");
    const double lo = p.getr("lambda_min");
    const double hi = p.getr("lambda_max");
    const std::string weight = p.gets("weight");
    if (weight != "potential" && weight != "x")
        throw argument_error("key 'weight': expected potential or x, got '" + weight + "'");

    std::vector<ScanRow> rows(count);
    parallel_for(cfg.jobs, count, [&](int i) {
        ResolventQuery q;
        q.lambda = (count == 1) ? lo : lo + (hi - lo) * i / (count - 1);
        q.nu = p.getr("nu");
        q.nu0 = p.getr("nu0");
        q.sign = static_cast<int>(p.geti("sign"));
        q.weight_exponent = p.getr("weight_exponent");
        q.weight_kind = (weight == "x") ? WeightKind::x_weight : WeightKind::potential_weight;
        q.min_certificate = p.getr("min_certificate");
        const ResolventEstimate e = weighted_resolvent_norm(h, q, static_cast<unsigned long long>(cfg.seed));
        rows[i] = ScanRow{q.lambda, q.nu, q.weight_exponent, q.sign, e.norm, e.certificate};
    });

    std::ostringstream csv;
    csv << "lambda,nu,theta,sign,norm,certificate\n";
    for (const auto& r : rows)
        csv << format_real(r.lambda) << "," << format_real(r.nu) << "," << format_real(r.theta) << ","
            << r.sign << "," << format_real(r.norm) << "," << format_real(r.certificate) << "\n";
    write_text_file(cfg.output_dir + "/scan.csv", csv.str());
    return {"scan.csv"};
}

Artifacts run_high_energy(const RunConfig& cfg) {
    const Params p{cfg};
    const Grid grid(1, p.getr("L"), static_cast<int>(p.geti("N")));
    const HamiltonianSpec spec(p.getr("tau"));
    const DiscreteHamiltonian h = assemble(grid, spec);

    std::vector<double> thetas;
    {
        std::stringstream ss(p.gets("thetas"));
        std::string tok;
        while (std::getline(ss, tok, ',')) thetas.push_back(parse_real("thetas", trim(tok)));
        if (thetas.empty()) throw argument_error("key 'thetas': empty list");
    }
    const int count = static_cast<int>(p.geti("lambda_count"));
    if (count < 2) throw argument_error("key 'lambda_count': need >= 2");
    const double lo = p.getr("lambda_min");
    const double hi = p.getr("lambda_max");
    std::vector<double> lambdas(count);
    for (int i = 0; i < count; ++i)
        lambdas[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));

    const HighEnergyScan scan =
        high_energy_scan(h, thetas, lambdas, p.getr("nu"), static_cast<unsigned long long>(cfg.seed));

    std::ostringstream csv;
    csv << "lambda,nu,theta,sign,norm,certificate\n";
    for (const auto& r : scan.scan.rows)
        csv << format_real(r.lambda) << "," << format_real(r.nu) << "," << format_real(r.theta) << ","
            << r.sign << "," << format_real(r.norm) << "," << format_real(r.certificate) << "\n";
    write_text_file(cfg.output_dir + "/scan.csv", csv.str());

    JsonObject j;
    for (std::size_t i = 0; i < scan.thetas.size(); ++i)
        j.set("slope_theta_" + format_real(scan.thetas[i]), scan.slopes[i]);
    j.write(cfg.output_dir + "/slopes.json");
    return {"scan.csv", "slopes.json"};
}

Artifacts run_smoothing(const RunConfig& cfg) {
    const Params p{cfg};
    const Grid grid(1, p.getr("L"), static_cast<int>(p.geti("N")));
    const HamiltonianSpec spec(p.getr("tau"), potential_from(p));
    const WaveFunction f = make_gaussian(grid, {0.0}, p.getr("a"), {0.0});

    const double T = p.getr("T");
    const double dt_target = p.getr("dt");
    int steps = std::max(2, static_cast<int>(std::lround(T / dt_target)));
    int record = std::max(1, steps / 512);
    steps = (steps / record) * record;  // keep the last step recorded
    EvolutionPlan plan(spec, T / steps, steps, record);
    const SmoothingResult res = smoothing_integral(f, spec, plan);

    JsonObject j;
    j.set("T", res.T);
    j.set("value", res.value);
    j.set("saturation", res.saturation_increment);
    j.set("norm_f_sq", res.norm_f_sq);
    j.write(cfg.output_dir + "/smoothing.json");
    return {"smoothing.json"};
}

Artifacts run_duhamel(const RunConfig& cfg) {
    const Params p{cfg};
    const Grid grid(1, p.getr("L"), static_cast<int>(p.geti("N")));
    const HamiltonianSpec spec(p.getr("tau"), potential_from(p));
    const WaveFunction f = make_gaussian(grid, {0.0}, p.getr("a"), {0.0});

    const double t = p.getr("t");
    const int quad = static_cast<int>(p.geti("quad_points"));
    const double dt_target = p.getr("dt");
    const int per = std::max(1, static_cast<int>(std::lround(t / (quad * dt_target))));
    EvolutionPlan plan(spec, t / (quad * per), quad * per, 1);
    const double residual = duhamel_residual(f, plan, quad);

    JsonObject j;
    j.set("t", t);
    j.set("quad_points", static_cast<long long>(quad));
    j.set("residual", residual);
    j.write(cfg.output_dir + "/duhamel.json");
    return {"duhamel.json"};
}

Artifacts run_weighted_decay(const RunConfig& cfg) {
    const Params p{cfg};
    const Grid grid(static_cast<int>(p.geti("n")), p.getr("L"), static_cast<int>(p.geti("N")));
    const int n = grid.dimension();
    const WaveFunction phi = make_gaussian(grid, std::vector<double>(n, 0.0), p.getr("a"),
                                           std::vector<double>(n, 0.0));
    std::vector<double> sigmas;
    for (double s = p.getr("sigma_min"); s <= p.getr("sigma_max") + 1e-12; s += p.getr("sigma_step"))
        sigmas.push_back(s);
    const HamiltonianSpec h(p.getr("tau"));
    const WeightedDecayResult res = weighted_decay_integrand(p.getr("rho"), p.getr("Q"), h, phi, sigmas);

    std::ostringstream csv;
    csv << "sigma,value\n";
    for (std::size_t i = 0; i < res.series.times.size(); ++i)
        csv << format_real(res.series.times[i]) << "," << format_real(res.series.norms[i]) << "\n";
    write_text_file(cfg.output_dir + "/weighted.csv", csv.str());

    JsonObject j;
    j.set("rate", res.fitted_slope);
    j.set("intercept", res.fitted_intercept);
    j.set("r_squared", res.fit_r_squared);
    j.set("reference_rate", res.reference_slope);
    j.set("integral", res.integral);
    j.set("saturation", res.saturation_increment);
    j.set("envelope_constant", res.envelope_constant);
    j.set("max_envelope_ratio", res.max_envelope_ratio);
    j.write(cfg.output_dir + "/fit.json");
    return {"weighted.csv", "fit.json"};
}

}  // namespace

ParsedFile parse_config(const std::string& text) {
    ParsedFile out;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw argument_error("config syntax error at line " + std::to_string(line_no) +
                                 ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw argument_error("config syntax error at line " + std::to_string(line_no) +
                                 ": empty key");
        if (key == "command")
            out.command = value;
        else
            out.values[key] = value;  // later keys override earlier ones
    }
    if (out.command.empty()) throw argument_error("config error: missing `command`");
    return out;
}

RunConfig resolve(const std::string& command, const std::map<std::string, std::string>& file_values,
                  const std::map<std::string, std::string>& flag_values) {
    const auto& specs = specs_for(command);

    RunConfig cfg;
    cfg.command = command;
    for (const auto& s : specs) cfg.parameters[s.name] = s.def;

    auto apply = [&](const std::map<std::string, std::string>& values, const char* origin) {
        for (const auto& [key, value] : values) {
            if (key == "output") {
                cfg.output_dir = value;
                continue;
            }
            if (key == "seed") {
                cfg.seed = parse_integer("seed", value);
                continue;
            }
            if (key == "jobs") {
                cfg.jobs = static_cast<int>(parse_integer("jobs", value));
                if (cfg.jobs < 1) throw argument_error("key 'jobs': must be >= 1");
                continue;
            }
            const ParamSpec* spec = find_spec(specs, key);
            if (!spec)
                throw argument_error(std::string(origin) + " key '" + key +
                                     "' is unknown for command '" + command + "'");
            validate_value(*spec, value);
            cfg.parameters[key] = value;
        }
    };
    apply(file_values, "config");
    apply(flag_values, "flag");
    return cfg;
}

std::vector<std::string> execute(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);

    Artifacts artifacts;
    if (cfg.command == "propagate") artifacts = run_propagate(cfg);
    else if (cfg.command == "decay-fit") artifacts = run_decay_fit(cfg);
    else if (cfg.command == "strichartz") artifacts = run_strichartz(cfg);
    else if (cfg.command == "region") artifacts = run_region(cfg);
    else if (cfg.command == "resolvent-scan") artifacts = run_resolvent_scan(cfg);
    else if (cfg.command == "high-energy") artifacts = run_high_energy(cfg);
    else if (cfg.command == "smoothing") artifacts = run_smoothing(cfg);
    else if (cfg.command == "duhamel") artifacts = run_duhamel(cfg);
    else if (cfg.command == "weighted-decay") artifacts = run_weighted_decay(cfg);
    else throw argument_error("unknown command '" + cfg.command + "'");

    JsonObject manifest;
    manifest.set("command", cfg.command);
    manifest.set("version", kVersion);
    manifest.set("seed", cfg.seed);
    manifest.set("jobs", cfg.jobs);
    manifest.set("output", cfg.output_dir);
    for (const auto& [k, v] : cfg.parameters) manifest.set("param_" + k, v);
    std::vector<std::string> quoted;
    for (const auto& a : artifacts) quoted.push_back("\"" + a + "\"");
    manifest.set_raw_array("artifacts", quoted);
    manifest.write(cfg.output_dir + "/manifest.json");

    artifacts.push_back("manifest.json");
    return artifacts;
}

std::string help_text() {
    std::ostringstream out;
    out << "usage: repulse-scan <command> [--key value ...]\n"
        << "       repulse-scan --config <file> [--key value ...]\n\n"
        << "global flags: --config <path>, --output <dir>, --jobs <k>, --seed <int>\n\n"
        << "commands:\n";
    for (const auto& [name, specs] : registry()) {
        out << "  " << name << "\n";
        for (const auto& s : specs)
            out << "    --" << s.name << " <" << type_name(s.type) << "> (default " << s.def << ") "
                << s.help << "\n";
    }
    return out.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        std::string command;
        std::string config_path;
        std::map<std::string, std::string> flag_values;

        std::size_t i = 0;
        if (i < args.size() && !args[i].starts_with("--")) {
            command = args[i];
            ++i;
        }
        for (; i < args.size(); ++i) {
            const std::string& a = args[i];
            if (a == "--help" || a == "-h") {
                out << help_text();
                return 0;
            }
            if (!a.starts_with("--")) throw argument_error("unexpected argument '" + a + "'");
            std::string key = a.substr(2);
            std::string value;
            const std::size_t eq = key.find('=');
            if (eq != std::string::npos) {
                value = key.substr(eq + 1);
                key = key.substr(0, eq);
            } else {
                if (i + 1 >= args.size()) throw argument_error("flag '--" + key + "' needs a value");
                value = args[++i];
            }
            if (key == "config")
                config_path = value;
            else
                flag_values[key] = value;
        }

        std::map<std::string, std::string> file_values;
        if (!config_path.empty()) {
            std::ifstream f(config_path, std::ios::binary);
            if (!f) throw argument_error("cannot read config file: " + config_path);
            std::ostringstream ss;
            ss << f.rdbuf();
            const ParsedFile parsed = parse_config(ss.str());
            if (command.empty()) command = parsed.command;
            file_values = parsed.values;
        }
        if (command.empty()) throw argument_error("no command given (and no config file)");

        const RunConfig cfg = resolve(command, file_values, flag_values);
        try {
            const auto artifacts = execute(cfg);
            for (const auto& a : artifacts) out << cfg.output_dir << "/" << a << "\n";
            return 0;
        } catch (const argument_error&) {
            throw;  // module-level argument errors still count as validation
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return 3;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace repulse::cli
