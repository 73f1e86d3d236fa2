#include "levyheat/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string>

#include <nlohmann/json.hpp>

#include "levyheat/recipes.hpp"

namespace levyheat {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw contract_error("config: " + msg); }

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object())
        fail("'" + (path.empty() ? std::string("<top>") : path) + "' must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail("unknown field '" + path + "." + it.key() + "'");
    }
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double num(const json& j, const std::string& path) {
    if (!j.is_number()) fail("'" + path + "' must be a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail("'" + path + "' must be an integer");
    return j.get<int>();
}

bool boolean(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail("'" + path + "' must be a boolean");
    return j.get<bool>();
}

std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) fail("'" + path + "' must be a string");
    return j.get<std::string>();
}

std::vector<double> num_list(const json& j, const std::string& path) {
    if (!j.is_array()) fail("'" + path + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(num(v, path));
    return out;
}

std::vector<int> int_list(const json& j, const std::string& path) {
    if (!j.is_array()) fail("'" + path + "' must be an array of integers");
    std::vector<int> out;
    for (const auto& v : j) out.push_back(integer(v, path));
    return out;
}

std::vector<std::string> text_list(const json& j, const std::string& path) {
    if (!j.is_array()) fail("'" + path + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& v : j) out.push_back(text(v, path));
    return out;
}

void one_of(const std::string& value, const std::string& path,
            std::initializer_list<const char*> allowed) {
    for (const char* k : allowed)
        if (value == k) return;
    fail("'" + path + "' has unsupported value '" + value + "'");
}

} // namespace

ExperimentConfig parse_config(const json& doc) {
    if (!doc.is_object()) fail("top level must be an object");
    check_keys(doc, "",
               {"schema_version", "seed", "grid", "time", "levy", "field", "check", "output"});

    ExperimentConfig cfg;
    const json* v = find(doc, "schema_version");
    if (!v) fail("'schema_version' is required");
    cfg.schema_version = integer(*v, "schema_version");
    if (cfg.schema_version != ExperimentConfig::kSchemaVersion)
        fail("'schema_version' " + std::to_string(cfg.schema_version) + " is not supported");

    if ((v = find(doc, "seed"))) {
        if (!v->is_number_unsigned() && !v->is_number_integer())
            fail("'seed' must be a nonnegative integer");
        cfg.seed = v->get<std::uint64_t>();
    }
    if ((v = find(doc, "output"))) cfg.output = text(*v, "output");

    if ((v = find(doc, "grid"))) {
        check_keys(*v, "grid", {"dim", "n", "period"});
        if (const json* f = find(*v, "dim")) cfg.grid.dim = integer(*f, "grid.dim");
        if (const json* f = find(*v, "n")) cfg.grid.n = integer(*f, "grid.n");
        if (const json* f = find(*v, "period")) cfg.grid.period = num(*f, "grid.period");
        GridSpec::make(cfg.grid.dim, cfg.grid.n, cfg.grid.period);  // validate early
    }

    if ((v = find(doc, "time"))) {
        check_keys(*v, "time", {"horizon", "steps"});
        ExperimentConfig::TimeBlock tb;
        if (const json* f = find(*v, "horizon")) tb.horizon = num(*f, "time.horizon");
        if (const json* f = find(*v, "steps")) tb.steps = integer(*f, "time.steps");
        TimeGrid::make(tb.horizon, tb.steps);
        cfg.time = tb;
    }

    if ((v = find(doc, "levy"))) {
        check_keys(*v, "levy", {"atoms", "uniform_density"});
        ExperimentConfig::LevyBlock lb;
        const json* atoms = find(*v, "atoms");
        const json* uni = find(*v, "uniform_density");
        if ((atoms == nullptr) == (uni == nullptr))
            fail("'levy' needs exactly one of 'atoms' or 'uniform_density'");
        if (atoms) {
            if (!atoms->is_array()) fail("'levy.atoms' must be an array");
            for (const auto& a : *atoms) {
                check_keys(a, "levy.atoms[]", {"size", "rate"});
                Atom atom;
                if (const json* f = find(a, "size")) atom.size = num(*f, "levy.atoms[].size");
                if (const json* f = find(a, "rate")) atom.rate = num(*f, "levy.atoms[].rate");
                lb.atoms.push_back(atom);
            }
        } else {
            check_keys(*uni, "levy.uniform_density", {"lo", "hi", "mass"});
            ExperimentConfig::LevyBlock::Uniform u;
            if (const json* f = find(*uni, "lo")) u.lo = num(*f, "levy.uniform_density.lo");
            if (const json* f = find(*uni, "hi")) u.hi = num(*f, "levy.uniform_density.hi");
            if (const json* f = find(*uni, "mass")) u.mass = num(*f, "levy.uniform_density.mass");
            if (!(u.lo < u.hi)) fail("'levy.uniform_density' needs lo < hi");
            if (!(u.mass > 0.0)) fail("'levy.uniform_density.mass' must be positive");
            lb.uniform = u;
        }
        cfg.levy = lb;
    }

    if ((v = find(doc, "field"))) {
        check_keys(*v, "field",
                   {"recipe", "mode", "amplitude", "slope", "field_seed", "mean_zero",
                    "time_window"});
        ExperimentConfig::FieldBlock fb;
        if (const json* f = find(*v, "recipe")) fb.recipe = text(*f, "field.recipe");
        one_of(fb.recipe, "field.recipe", {"zero", "constant", "single_mode", "random_decay"});
        if (const json* f = find(*v, "mode")) {
            auto m = int_list(*f, "field.mode");
            if (m.empty() || m.size() > 2) fail("'field.mode' needs 1 or 2 components");
            fb.mode = {m[0], m.size() > 1 ? m[1] : 0};
        }
        if (const json* f = find(*v, "amplitude")) fb.amplitude = num(*f, "field.amplitude");
        if (const json* f = find(*v, "slope")) fb.slope = num(*f, "field.slope");
        if (const json* f = find(*v, "field_seed")) {
            if (!f->is_number_integer() && !f->is_number_unsigned())
                fail("'field.field_seed' must be an integer");
            fb.field_seed = f->get<std::uint64_t>();
        }
        if (const json* f = find(*v, "mean_zero")) fb.mean_zero = boolean(*f, "field.mean_zero");
        if (const json* f = find(*v, "time_window")) {
            auto w = num_list(*f, "field.time_window");
            if (w.size() != 2) fail("'field.time_window' needs exactly [from, until]");
            fb.time_window = std::make_pair(w[0], w[1]);
        }
        cfg.field = fb;
    }

    v = find(doc, "check");
    if (!v) fail("'check' is required");
    check_keys(*v, "check",
               {"kind", "p", "k", "alpha", "homogeneous", "samples", "trials", "blocks",
                "scaled_times", "j_count", "time_steps", "index_mode", "norm_pairs",
                "variants"});
    auto& cb = cfg.check;
    if (const json* f = find(*v, "kind")) cb.kind = text(*f, "check.kind");
    one_of(cb.kind, "check.kind",
           {"partition-check", "kernel-decay", "hardy", "prop1", "theorem", "corollary",
            "isometry", "fractional"});
    if (const json* f = find(*v, "p")) cb.p_list = num_list(*f, "check.p");
    for (double p : cb.p_list)
        if (!(p >= 1.0)) fail("'check.p' entries must be >= 1");
    if (const json* f = find(*v, "k")) cb.k_list = num_list(*f, "check.k");
    if (const json* f = find(*v, "alpha")) cb.alpha_list = num_list(*f, "check.alpha");
    for (double a : cb.alpha_list)
        if (!(a > 0.0 && a < 1.0)) fail("'check.alpha' entries must lie in (0,1)");
    if (const json* f = find(*v, "homogeneous"))
        cb.homogeneous = boolean(*f, "check.homogeneous");
    if (const json* f = find(*v, "samples")) cb.samples = integer(*f, "check.samples");
    if (cb.samples < 2) fail("'check.samples' must be >= 2");
    if (const json* f = find(*v, "trials")) cb.trials = integer(*f, "check.trials");
    if (cb.trials < 1) fail("'check.trials' must be >= 1");
    if (const json* f = find(*v, "blocks")) cb.blocks = int_list(*f, "check.blocks");
    if (const json* f = find(*v, "scaled_times"))
        cb.scaled_times = num_list(*f, "check.scaled_times");
    if (const json* f = find(*v, "j_count")) cb.j_count = integer(*f, "check.j_count");
    if (cb.j_count < 1) fail("'check.j_count' must be >= 1");
    if (const json* f = find(*v, "time_steps")) cb.time_steps = integer(*f, "check.time_steps");
    if (cb.time_steps < 1) fail("'check.time_steps' must be >= 1");
    if (const json* f = find(*v, "index_mode")) cb.index_mode = text(*f, "check.index_mode");
    one_of(cb.index_mode, "check.index_mode", {"nonneg", "all"});
    if (const json* f = find(*v, "norm_pairs")) cb.norm_pairs = text_list(*f, "check.norm_pairs");
    for (const auto& s : cb.norm_pairs)
        one_of(s, "check.norm_pairs", {"HH", "BB", "HdotHdot", "BdotBdot"});
    if (const json* f = find(*v, "variants")) cb.variants = text_list(*f, "check.variants");
    for (const auto& s : cb.variants)
        one_of(s, "check.variants", {"kernel", "envelope", "prop1"});
    if (cb.kind == "fractional" && cb.alpha_list.empty())
        fail("'check.alpha' must be nonempty for the fractional check");

    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

json config_to_json(const ExperimentConfig& c) {
    json doc;
    doc["schema_version"] = c.schema_version;
    doc["seed"] = c.seed;
    doc["output"] = c.output;
    doc["grid"] = {{"dim", c.grid.dim}, {"n", c.grid.n}, {"period", c.grid.period}};
    if (c.time)
        doc["time"] = {{"horizon", c.time->horizon}, {"steps", c.time->steps}};
    if (c.levy) {
        if (c.levy->uniform)
            doc["levy"] = {{"uniform_density",
                            {{"lo", c.levy->uniform->lo},
                             {"hi", c.levy->uniform->hi},
                             {"mass", c.levy->uniform->mass}}}};
        else {
            json atoms = json::array();
            for (const Atom& a : c.levy->atoms)
                atoms.push_back({{"size", a.size}, {"rate", a.rate}});
            doc["levy"] = {{"atoms", atoms}};
        }
    }
    if (c.field) {
        json f;
        f["recipe"] = c.field->recipe;
        f["mode"] = {c.field->mode[0], c.field->mode[1]};
        f["amplitude"] = c.field->amplitude;
        f["slope"] = c.field->slope;
        f["field_seed"] = c.field->field_seed;
        f["mean_zero"] = c.field->mean_zero;
        if (c.field->time_window)
            f["time_window"] = {c.field->time_window->first, c.field->time_window->second};
        doc["field"] = f;
    }
    json chk;
    chk["kind"] = c.check.kind;
    chk["p"] = c.check.p_list;
    chk["k"] = c.check.k_list;
    chk["alpha"] = c.check.alpha_list;
    chk["homogeneous"] = c.check.homogeneous;
    chk["samples"] = c.check.samples;
    chk["trials"] = c.check.trials;
    chk["blocks"] = c.check.blocks;
    chk["scaled_times"] = c.check.scaled_times;
    chk["j_count"] = c.check.j_count;
    chk["time_steps"] = c.check.time_steps;
    chk["index_mode"] = c.check.index_mode;
    chk["norm_pairs"] = c.check.norm_pairs;
    chk["variants"] = c.check.variants;
    doc["check"] = chk;
    return doc;
}

json report_to_json(const RatioReport& r) {
    json rec;
    rec["check"] = r.name;
    rec["lhs"] = r.lhs;
    rec["rhs"] = r.rhs;
    rec["ratio"] = r.ratio;
    rec["fitted_constants"] = r.fitted_constants;
    if (r.mc_error) rec["mc_error"] = *r.mc_error;
    json refine = json::array();
    for (const auto& [res, ratio] : r.refinement) refine.push_back({res, ratio});
    rec["refinement"] = refine;
    rec["params"] = r.params;
    rec["verdict"] = r.pass ? "pass" : "fail";
    rec["criterion"] = r.criterion;
    return rec;
}

namespace {

LevyMeasureSpec make_measure(const ExperimentConfig& cfg) {
    if (!cfg.levy) fail("'levy' is required for this check");
    if (cfg.levy->uniform) {
        const auto u = *cfg.levy->uniform;
        const double density = u.mass / (u.hi - u.lo);
        return LevyMeasureSpec::density([density](double) { return density; }, u.lo, u.hi);
    }
    return LevyMeasureSpec::atoms(cfg.levy->atoms);
}

Field make_spatial(const ExperimentConfig& cfg, const GridSpec& grid) {
    if (!cfg.field) fail("'field' is required for this check");
    const auto& f = *cfg.field;
    if (f.recipe == "zero") return make_zero(grid);
    if (f.recipe == "constant") return make_constant(grid, f.amplitude);
    if (f.recipe == "single_mode") return make_single_mode(grid, f.mode, f.amplitude);
    return make_random_decay(grid, f.slope, f.field_seed, f.mean_zero);
}

SpaceTimeField make_spacetime(const ExperimentConfig& cfg, const GridSpec& grid) {
    if (!cfg.time) fail("'time' is required for this check");
    const TimeGrid tg = TimeGrid::make(cfg.time->horizon, cfg.time->steps);
    const Field frame = make_spatial(cfg, grid);
    if (cfg.field->time_window)
        return make_time_window(tg, frame, cfg.field->time_window->first,
                                cfg.field->time_window->second);
    return make_constant_in_time(tg, frame);
}

std::vector<double> default_kernel_thetas() {
    return {0.25, 0.5, 0.75, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0};
}

std::vector<double> default_envelope_thetas() {
    return {0.0, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5};
}

NormPair pair_from_string(const std::string& s) {
    if (s == "HH") return NormPair::SobolevSobolev;
    if (s == "BB") return NormPair::BesovBesov;
    if (s == "HdotHdot") return NormPair::HomSobolevHomSobolev;
    return NormPair::HomBesovHomBesov;
}

std::vector<SemigroupKind> kinds_from(const ExperimentConfig& cfg) {
    std::vector<SemigroupKind> kinds;
    if (cfg.check.alpha_list.empty())
        kinds.push_back(SemigroupKind::heat());
    else
        for (double a : cfg.check.alpha_list) kinds.push_back(SemigroupKind::fractional(a));
    return kinds;
}

std::string format_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void emit_plot_data(const std::vector<RatioReport>& reports, const std::string& selector,
                    const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    auto selected = [&selector](const RatioReport& r) {
        return selector.empty() || r.name == selector;
    };

    std::ofstream decay(out_dir / "decay_curves.tsv");
    decay << "scaled_time\tkernel_l1\tj\n";
    for (const auto& r : reports) {
        if (!selected(r)) continue;
        for (const auto& row : r.curves)
            decay << format_num(row[0]) << '\t' << format_num(row[1]) << '\t'
                  << format_num(row[2]) << '\n';
    }

    std::ofstream refine(out_dir / "ratio_vs_refinement.tsv");
    refine << "check\tresolution\tratio\n";
    for (const auto& r : reports) {
        if (!selected(r)) continue;
        for (const auto& [res, ratio] : r.refinement)
            refine << r.name << '\t' << format_num(res) << '\t' << format_num(ratio) << '\n';
    }

    std::ofstream vsp(out_dir / "ratio_vs_p.tsv");
    vsp << "check\tp\tratio\n";
    for (const auto& r : reports) {
        if (!selected(r)) continue;
        auto it = r.params.find("p");
        if (it != r.params.end())
            vsp << r.name << '\t' << format_num(it->second) << '\t' << format_num(r.ratio)
                << '\n';
    }
}

RunResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                         int workers) {
    const GridSpec grid = GridSpec::make(cfg.grid.dim, cfg.grid.n, cfg.grid.period);
    const auto& cb = cfg.check;
    const std::uint64_t seed = cfg.seed;
    std::vector<RatioReport> reports;

    // A checker precondition tripping at run time (divergent moment, biased
    // field under a homogeneous norm, ...) becomes a recorded failed report;
    // only malformed configs abort the run.
    auto checked = [&reports, &cb](auto&& fn) {
        try {
            reports.push_back(fn());
        } catch (const singularity_error& e) {
            RatioReport rep;
            rep.name = cb.kind;
            rep.pass = false;
            rep.criterion = std::string("precondition failed: ") + e.what();
            reports.push_back(rep);
        } catch (const infinite_moment_error& e) {
            RatioReport rep;
            rep.name = cb.kind;
            rep.pass = false;
            rep.criterion = std::string("precondition failed: ") + e.what();
            reports.push_back(rep);
        }
    };

    if (cb.kind == "partition-check") {
        checked([&] { return check_partition(grid); });
    } else if (cb.kind == "kernel-decay") {
        for (const SemigroupKind& kind : kinds_from(cfg))
            for (const std::string& variant : cb.variants) {
                if (variant == "kernel") {
                    auto thetas = cb.scaled_times.empty() ? default_kernel_thetas()
                                                          : cb.scaled_times;
                    checked([&] { return check_kernel_decay(grid, cb.blocks, thetas, kind); });
                } else if (variant == "envelope") {
                    auto thetas = cb.scaled_times.empty() ? default_envelope_thetas()
                                                          : cb.scaled_times;
                    checked([&] {
                        return check_block_decay(grid, cb.blocks, thetas, cb.p_list,
                                                 cb.trials, seed, kind);
                    });
                } else {
                    fail("'check.variants' entry '" + variant +
                         "' is not valid for kernel-decay");
                }
            }
    } else if (cb.kind == "hardy") {
        const double horizon = cfg.time ? cfg.time->horizon : 1.0;
        const IndexMode mode =
            cb.index_mode == "all" ? IndexMode::AllIntegers : IndexMode::NonNegative;
        for (double p : cb.p_list)
            checked([&] {
                return check_hardy(p, cb.j_count, horizon, cb.time_steps, cb.trials, mode,
                                   seed);
            });
    } else if (cb.kind == "prop1") {
        const SpaceTimeField g = make_spacetime(cfg, grid);
        for (const SemigroupKind& kind : kinds_from(cfg))
            for (double p : cb.p_list)
                checked([&] { return check_prop1(g, p, cb.homogeneous, kind); });
    } else if (cb.kind == "theorem") {
        const SpaceTimeField g = make_spacetime(cfg, grid);
        const LevyMeasureSpec nu = make_measure(cfg);
        for (const SemigroupKind& kind : kinds_from(cfg))
            for (double p : cb.p_list)
                for (double k : cb.k_list)
                    checked([&] {
                        return check_theorem(g, nu, k, p, cb.homogeneous, cb.samples, seed,
                                             kind, workers);
                    });
    } else if (cb.kind == "corollary") {
        const SpaceTimeField g = make_spacetime(cfg, grid);
        const LevyMeasureSpec nu = make_measure(cfg);
        for (double p : cb.p_list)
            for (double k : cb.k_list)
                for (const std::string& pair : cb.norm_pairs)
                    checked([&] {
                        return check_corollary(g, nu, k, p, pair_from_string(pair),
                                               cb.samples, seed, workers);
                    });
    } else if (cb.kind == "isometry") {
        const SpaceTimeField g = make_spacetime(cfg, grid);
        const LevyMeasureSpec nu = make_measure(cfg);
        const auto kinds = kinds_from(cfg);
        checked([&] { return check_isometry(g, nu, cb.samples, seed, kinds.front(), workers); });
    } else if (cb.kind == "fractional") {
        for (const SemigroupKind& kind : kinds_from(cfg))
            for (const std::string& variant : cb.variants) {
                if (variant == "kernel") {
                    auto thetas = cb.scaled_times.empty() ? default_kernel_thetas()
                                                          : cb.scaled_times;
                    checked([&] { return check_kernel_decay(grid, cb.blocks, thetas, kind); });
                } else if (variant == "prop1") {
                    const SpaceTimeField g = make_spacetime(cfg, grid);
                    for (double p : cb.p_list)
                        checked([&] { return check_prop1(g, p, cb.homogeneous, kind); });
                } else {
                    fail("'check.variants' entry '" + variant +
                         "' is not valid for fractional");
                }
            }
    }

    std::filesystem::create_directories(out_dir);
    std::ofstream log(out_dir / "results.jsonl", std::ios::app);
    bool all_pass = true;
    for (const RatioReport& r : reports) {
        json rec = report_to_json(r);
        rec["seed"] = seed;
        rec["schema_version"] = cfg.schema_version;
        log << rec.dump() << '\n';
        all_pass = all_pass && r.pass;
        std::printf("[%s] %-16s ratio=%-12.6g lhs=%-12.6g rhs=%-12.6g %s\n",
                    r.pass ? "pass" : "FAIL", r.name.c_str(), r.ratio, r.lhs, r.rhs,
                    r.criterion.c_str());
    }
    emit_plot_data(reports, "", out_dir);

    RunResult out;
    out.exit_code = all_pass ? 0 : 1;
    out.reports = std::move(reports);
    return out;
}

} // namespace levyheat
