#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hellylab/compression.hpp"
#include "hellylab/io.hpp"
#include "hellylab/learners.hpp"
#include "hellylab/parameters.hpp"
#include "hellylab/rng.hpp"
#include "hellylab/simulation.hpp"
#include "hellylab/svm.hpp"

using namespace hellylab;

namespace {

// Writes the result (JSON or text) to --out or stdout; result files get a
// manifest sidecar. Result bytes depend only on inputs and seed; timing
// lives in the sidecar.
struct OutputSink {
    std::string path;  // empty = stdout
    std::string command_line;
    std::uint64_t seed = 0;
    std::vector<std::string> inputs;
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();

    void write(const json& result) const {
        if (path.empty()) {
            std::cout << result.dump(2) << "\n";
            return;
        }
        save_json(result, path);
        write_manifest();
    }

    void write_text(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        require(bool(out), errc::validation, "cannot write file: " + path);
        out << text;
        out.close();
        write_manifest();
    }

    void write_manifest() const {
        RunManifest manifest;
        manifest.command_line = command_line;
        manifest.master_seed = seed;
        manifest.tool_version = kToolVersion;
        for (const auto& in : inputs)
            manifest.input_digests.emplace_back(in, file_digest(in));
        manifest.duration_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        save_json(manifest_to_json(manifest), path + ".manifest.json");
    }
};

std::uint64_t env_seed_fallback() {
    if (const char* env = std::getenv("HELLYLAB_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 0;
}

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> grid;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) grid.push_back(std::strtod(item.c_str(), nullptr));
    return grid;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(int(std::strtol(item.c_str(), nullptr, 10)));
    return out;
}

// CSV rows with coordinate columns plus, optionally, a trailing label column.
void load_points_csv(const std::string& path, Points& points,
                     std::vector<Label>& labels, bool with_labels) {
    std::ifstream in(path);
    require(bool(in), errc::validation, "cannot open file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str()) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) continue;  // header line
        require(row.size() >= (with_labels ? 2u : 1u), errc::validation,
                "points csv: too few columns");
        if (with_labels) {
            double y = row.back();
            row.pop_back();
            require(y == 1.0 || y == -1.0, errc::validation,
                    "points csv: labels must be -1 or 1");
            labels.push_back(Label(y));
        }
        points.push_back(std::move(row));
    }
    require(!points.empty(), errc::validation, "points csv: no data rows");
}

int resolve_k(const std::string& k_arg, const ConceptClass& cls,
              const SearchCaps& caps) {
    if (k_arg == "auto") {
        DualHellyResult dual = dual_helly_number(cls, caps);
        require(dual.value >= 2, errc::validation,
                "--k auto: class has dual Helly number < 2");
        return dual.value;
    }
    int k = int(std::strtol(k_arg.c_str(), nullptr, 10));
    require(k >= 2, errc::validation, "--k must be 'auto' or an integer >= 2");
    return k;
}

Learner resolve_learner(const std::string& algo, int k) {
    if (algo == "erm") return erm_lowest_index_learner();
    if (algo == "A") return algorithm_a_learner(k);
    if (algo == "A_ERM") return algorithm_a_erm_learner(k);
    fail(errc::validation, "unknown --algo: " + algo);
}

json rows_json(const std::vector<std::tuple<int, ExperimentResult>>& rows) {
    json out = json::array();
    for (const auto& [n, res] : rows) {
        json r = experiment_result_to_json(res);
        r["n"] = n;
        out.push_back(r);
    }
    return out;
}

std::string rows_csv(const std::vector<std::tuple<int, ExperimentResult>>& rows) {
    std::string out = "n,failure_rate,wilson_lo,wilson_hi\n";
    char buf[160];
    for (const auto& [n, res] : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g\n", n,
                      round_sig(res.failure_rate), round_sig(res.wilson.lo),
                      round_sig(res.wilson.hi));
        out += buf;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hellylab: finite concept classes, combinatorial dimensions, "
                 "proper learners, stable compression, and PAC experiments"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "cap worker parallelism (0 = auto)");

    std::string command_line;
    for (int i = 0; i < argc; ++i) {
        if (i) command_line += ' ';
        command_line += argv[i];
    }

    // ---- gen-class ----
    auto* gen = app.add_subcommand("gen-class", "generate a named class family");
    std::string gen_kind, gen_grid, gen_points_file, gen_out;
    int gen_n = 0, gen_grid_size = 0, gen_d = 0, gen_kw = 0, gen_hyps = 0;
    bool gen_augment = false, gen_include_empty = false;
    std::uint64_t gen_seed = env_seed_fallback();
    gen->add_option("--kind", gen_kind,
                    "singletons|thresholds|intervals|hard|halfspace|random")
        ->required();
    gen->add_option("--n", gen_n, "domain size (singletons, random)");
    gen->add_option("--grid", gen_grid, "comma-separated grid values");
    gen->add_option("--grid-size", gen_grid_size, "integer grid 1..N");
    gen->add_flag("--augment", gen_augment, "add the all-negative classifier");
    gen->add_flag("--include-empty", gen_include_empty,
                  "intervals: include the empty interval");
    gen->add_option("--d", gen_d, "hard class: VC dimension");
    gen->add_option("--kw", gen_kw, "hard class: dual Helly number");
    gen->add_option("--points", gen_points_file,
                    "halfspace: csv of coordinate points");
    gen->add_option("--hyps", gen_hyps, "random: number of hypotheses");
    gen->add_option("--seed", gen_seed, "random: seed");
    gen->add_option("--out", gen_out, "output class file");

    // ---- params ----
    auto* params = app.add_subcommand("params", "compute the parameter report");
    std::string params_class, params_out;
    int params_cap = 20, params_hyp_cap = 64, params_star_cap = 12,
        params_budget = 200;
    std::uint64_t params_seed = env_seed_fallback();
    params->add_option("--class", params_class, "class file")->required();
    params->add_option("--cap", params_cap, "max domain size for search");
    params->add_option("--hyp-cap", params_hyp_cap, "max hypotheses (<= 64)");
    params->add_option("--star-cap", params_star_cap, "star number cap");
    params->add_option("--budget", params_budget, "projection multiset budget");
    params->add_option("--seed", params_seed, "projection sampling seed");
    params->add_option("--out", params_out, "output report file");

    // ---- learn ----
    auto* learn = app.add_subcommand("learn", "run a proper learner");
    std::string learn_algo, learn_class, learn_sample, learn_k = "auto",
                learn_out;
    int learn_cap = 20;
    std::uint64_t learn_seed = env_seed_fallback();
    learn->add_option("--algo", learn_algo, "A|A_ERM|erm")->required();
    learn->add_option("--class", learn_class, "class file")->required();
    learn->add_option("--sample", learn_sample, "sample file")->required();
    learn->add_option("--k", learn_k, "projection parameter or 'auto'");
    learn->add_option("--seed", learn_seed, "seed (algorithm A)");
    learn->add_option("--cap", learn_cap, "search cap for --k auto");
    learn->add_option("--out", learn_out, "output file");

    // ---- compress check ----
    auto* compress = app.add_subcommand("compress", "compression schemes");
    auto* check = compress->add_subcommand(
        "check", "validity/stability over seeded random samples");
    std::string check_scheme, check_out;
    int check_trials = 1000, check_domain = 12, check_dim = 2,
        check_max_sample = 16;
    std::uint64_t check_seed = env_seed_fallback();
    check->add_option("--scheme", check_scheme, "svm|singleton|closure")
        ->required();
    check->add_option("--trials", check_trials, "number of random samples");
    check->add_option("--seed", check_seed, "seed");
    check->add_option("--domain-size", check_domain,
                      "domain size for finite hosts");
    check->add_option("--dimension", check_dim, "dimension for the svm scheme");
    check->add_option("--max-sample", check_max_sample, "max sample length");
    check->add_option("--out", check_out, "output file");

    // ---- svm ----
    auto* svm_cmd = app.add_subcommand("svm", "hard-margin svm");
    auto* solve = svm_cmd->add_subcommand("solve", "max-margin separator");
    std::string solve_points, solve_out;
    double solve_sep_tol = 1e-9, solve_margin_tol = 1e-7;
    solve->add_option("--points", solve_points, "csv: coords + label column")
        ->required();
    solve->add_option("--sep-tol", solve_sep_tol,
                      "minimal certified margin treated as separable");
    solve->add_option("--margin-tol", solve_margin_tol,
                      "relative tolerance for support membership");
    solve->add_option("--out", solve_out, "output file");

    auto* bench = svm_cmd->add_subcommand("bench", "generalization benchmark");
    int bench_dim = 2, bench_support = 20, bench_m = 300, bench_trials = 2000;
    double bench_delta = 0.05;
    std::uint64_t bench_seed = env_seed_fallback();
    std::string bench_out;
    bench->add_option("--dimension", bench_dim, "ambient dimension");
    bench->add_option("--support", bench_support, "support size");
    bench->add_option("--m", bench_m, "training sample size");
    bench->add_option("--delta", bench_delta, "confidence parameter");
    bench->add_option("--trials", bench_trials, "trials");
    bench->add_option("--seed", bench_seed, "seed");
    bench->add_option("--out", bench_out, "output file");

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "PAC experiments");

    auto* pac = simulate->add_subcommand("pac", "failure rate on an instance");
    std::string pac_class, pac_dist = "uniform", pac_algo = "erm",
                pac_k = "auto", pac_format = "json", pac_out, pac_nlist;
    int pac_target = 0, pac_n = 0, pac_trials = 1000, pac_cap = 20;
    double pac_epsilon = 0.1, pac_delta = 0.05;
    bool pac_estimate = false;
    std::uint64_t pac_seed = env_seed_fallback();
    pac->add_option("--class", pac_class, "class file")->required();
    pac->add_option("--target", pac_target, "target hypothesis index")
        ->required();
    pac->add_option("--dist", pac_dist,
                    "'uniform' or a json file with {\"probabilities\": [...]}");
    pac->add_option("--epsilon", pac_epsilon, "accuracy")->required();
    pac->add_option("--delta", pac_delta, "confidence (estimate mode)");
    pac->add_option("--n", pac_n, "sample size");
    pac->add_option("--n-list", pac_nlist, "comma-separated sample sizes");
    pac->add_option("--trials", pac_trials, "trials per n");
    pac->add_option("--seed", pac_seed, "seed");
    pac->add_option("--algo", pac_algo, "erm|A|A_ERM");
    pac->add_option("--k", pac_k, "projection parameter or 'auto'");
    pac->add_option("--cap", pac_cap, "search cap for --k auto");
    pac->add_flag("--estimate", pac_estimate,
                  "search the smallest n with Wilson upper bound <= delta");
    pac->add_option("--format", pac_format, "json|csv");
    pac->add_option("--out", pac_out, "output file");

    auto* lower = simulate->add_subcommand(
        "lower-bound", "hollow-star lower bound on singletons");
    int lb_k = 32, lb_n = -1, lb_trials = 2000;
    double lb_epsilon = 1.0 / 32;
    std::string lb_algo = "erm", lb_nlist, lb_format = "json", lb_out,
                lb_learner_k = "auto";
    std::uint64_t lb_seed = env_seed_fallback();
    lower->add_option("--k", lb_k, "hollow star size (singletons over k points)");
    lower->add_option("--epsilon", lb_epsilon, "accuracy (<= 1/k)");
    lower->add_option("--n", lb_n, "sample size");
    lower->add_option("--n-list", lb_nlist, "comma-separated sample sizes");
    lower->add_option("--trials", lb_trials, "trials per n");
    lower->add_option("--seed", lb_seed, "seed");
    lower->add_option("--algo", lb_algo, "erm|A|A_ERM");
    lower->add_option("--learner-k", lb_learner_k,
                      "projection parameter for A/A_ERM ('auto' = k)");
    lower->add_option("--format", lb_format, "json|csv");
    lower->add_option("--out", lb_out, "output file");

    auto* hard = simulate->add_subcommand("hard-class",
                                          "hard-class lower bound instance");
    int hc_d = 2, hc_kw = 8, hc_n = -1, hc_trials = 2000;
    double hc_epsilon = 1.0 / 16;
    std::string hc_algo = "erm", hc_nlist, hc_format = "json", hc_out,
                hc_learner_k = "auto";
    std::uint64_t hc_seed = env_seed_fallback();
    hard->add_option("--d", hc_d, "VC dimension (>= 2)");
    hard->add_option("--kw", hc_kw, "dual Helly number");
    hard->add_option("--epsilon", hc_epsilon, "accuracy (<= (d-1)/4)");
    hard->add_option("--n", hc_n, "sample size");
    hard->add_option("--n-list", hc_nlist, "comma-separated sample sizes");
    hard->add_option("--trials", hc_trials, "trials per n");
    hard->add_option("--seed", hc_seed, "seed");
    hard->add_option("--algo", hc_algo, "erm|A|A_ERM");
    hard->add_option("--learner-k", hc_learner_k,
                     "projection parameter for A/A_ERM ('auto' = kw)");
    hard->add_option("--format", hc_format, "json|csv");
    hard->add_option("--out", hc_out, "output file");

    auto* coupon = simulate->add_subcommand("coupon",
                                            "generalized coupon collector");
    int cp_k = 100, cp_m = 10, cp_trials = 4000;
    std::uint64_t cp_seed = env_seed_fallback();
    std::string cp_out;
    coupon->add_option("--k", cp_k, "coupon count");
    coupon->add_option("--m", cp_m, "allowed missing coupons");
    coupon->add_option("--trials", cp_trials, "trials");
    coupon->add_option("--seed", cp_seed, "seed");
    coupon->add_option("--out", cp_out, "output file");

    auto* sbench = simulate->add_subcommand("svm-bench",
                                            "stable-compression bound vs svm");
    int sb_dim = 2, sb_support = 20, sb_m = 300, sb_trials = 2000;
    double sb_delta = 0.05;
    std::uint64_t sb_seed = env_seed_fallback();
    std::string sb_out;
    sbench->add_option("--dimension", sb_dim, "ambient dimension");
    sbench->add_option("--support", sb_support, "support size");
    sbench->add_option("--m", sb_m, "training sample size");
    sbench->add_option("--delta", sb_delta, "confidence parameter");
    sbench->add_option("--trials", sb_trials, "trials");
    sbench->add_option("--seed", sb_seed, "seed");
    sbench->add_option("--out", sb_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            OutputSink sink{gen_out, command_line, gen_seed, {}};
            ConceptClass cls = [&]() -> ConceptClass {
                std::vector<double> grid = parse_grid(gen_grid);
                if (grid.empty() && gen_grid_size > 0)
                    for (int i = 1; i <= gen_grid_size; ++i)
                        grid.push_back(double(i));
                if (gen_kind == "singletons")
                    return make_singletons(gen_n, gen_augment);
                if (gen_kind == "thresholds")
                    return make_thresholds(grid, gen_augment);
                if (gen_kind == "intervals")
                    return make_intervals(grid, gen_include_empty);
                if (gen_kind == "hard") return make_hard_class(gen_d, gen_kw);
                if (gen_kind == "halfspace") {
                    Points pts;
                    std::vector<Label> unused;
                    load_points_csv(gen_points_file, pts, unused, false);
                    sink.inputs.push_back(gen_points_file);
                    return make_halfspace_dichotomies(
                        pts, [](const Points& p, const std::vector<Label>& y) {
                            return separable(p, y);
                        });
                }
                if (gen_kind == "random")
                    return make_random_class(gen_n, gen_hyps, gen_seed);
                fail(errc::validation, "unknown --kind: " + gen_kind);
            }();
            sink.write(class_to_json(cls));
            return 0;
        }

        if (*params) {
            OutputSink sink{params_out, command_line, params_seed,
                            {params_class}};
            ConceptClass cls = load_class(params_class);
            SearchCaps caps{params_cap, params_hyp_cap};
            ParameterReport report = compute_parameter_report(
                cls, caps, params_star_cap, params_budget, params_seed);
            sink.write(report_to_json(report));
            return 0;
        }

        if (*learn) {
            OutputSink sink{learn_out, command_line, learn_seed,
                            {learn_class, learn_sample}};
            ConceptClass cls = load_class(learn_class);
            LabeledSample sample = sample_from_json(load_json(learn_sample));
            cls.check_sample(sample);
            SearchCaps caps{learn_cap, 64};

            int h = 0;
            int used_k = 0;
            if (learn_algo == "erm") {
                h = erm(cls, sample);
            } else if (learn_algo == "A") {
                used_k = resolve_k(learn_k, cls, caps);
                h = algorithm_a(cls, sample, LabeledSample{}, used_k,
                                learn_seed);
            } else if (learn_algo == "A_ERM") {
                used_k = resolve_k(learn_k, cls, caps);
                h = algorithm_a_erm(cls, sample, used_k);
            } else {
                fail(errc::validation, "unknown --algo: " + learn_algo);
            }
            json out;
            out["algo"] = learn_algo;
            if (used_k > 0) out["k"] = used_k;
            out["hypothesis"] = h;
            json preds = json::array();
            for (Label y : cls.row(h)) preds.push_back(int(y));
            out["predictions"] = preds;
            sink.write(out);
            return 0;
        }

        if (*check) {
            OutputSink sink{check_out, command_line, check_seed, {}};
            require(check_trials >= 1, errc::validation,
                    "--trials must be >= 1");
            int validity_failures = 0, stability_failures = 0, max_kappa = 0;

            if (check_scheme == "singleton" || check_scheme == "closure") {
                ConceptClass host =
                    check_scheme == "singleton"
                        ? make_singletons(check_domain, false)
                        : [&] {
                              std::vector<double> grid;
                              for (int i = 1; i <= check_domain; ++i)
                                  grid.push_back(double(i));
                              return make_intervals(grid, true);
                          }();
                FiniteScheme scheme = check_scheme == "singleton"
                                          ? singleton_scheme(host)
                                          : closure_scheme(host);
                // keep the singleton reconstruction inside the domain
                const int limit = check_scheme == "singleton"
                                      ? check_domain - 1
                                      : check_domain;
                for (int t = 0; t < check_trials; ++t) {
                    Rng trial(derive_seed(check_seed, std::uint64_t(t)));
                    int target =
                        int(trial.next_below(std::uint64_t(host.size())));
                    int size = 1 + int(trial.next_below(
                                       std::uint64_t(check_max_sample)));
                    std::vector<LabeledPoint<int>> s;
                    for (int i = 0; i < size; ++i) {
                        int x = int(trial.next_below(std::uint64_t(limit)));
                        s.push_back({x, host.predict(target, x)});
                    }
                    if (!check_validity(scheme, s)) ++validity_failures;
                    if (!check_stability(scheme, s)) ++stability_failures;
                    max_kappa =
                        std::max(max_kappa, int(scheme.kappa(s).size()));
                }
            } else if (check_scheme == "svm") {
                Scheme<std::vector<double>> scheme = svm_scheme(check_dim);
                for (int t = 0; t < check_trials; ++t) {
                    Rng trial(derive_seed(check_seed, std::uint64_t(t)));
                    std::vector<LabeledPoint<std::vector<double>>> s;
                    while (true) {
                        s.clear();
                        std::vector<double> w(std::size_t(check_dim), 0.0);
                        double wn = 0;
                        for (auto& c : w) {
                            c = trial.next_unit() - 0.5;
                            wn += c * c;
                        }
                        if (wn < 1e-6) continue;
                        double v = trial.next_unit() - 0.5;
                        int size = 2 + int(trial.next_below(std::uint64_t(
                                           check_max_sample - 1)));
                        double min_margin = 1e300;
                        for (int i = 0; i < size; ++i) {
                            std::vector<double> p(std::size_t(check_dim), 0.0);
                            double sc = -v;
                            for (int c = 0; c < check_dim; ++c) {
                                p[std::size_t(c)] = 2.0 * trial.next_unit() - 1.0;
                                sc += w[std::size_t(c)] * p[std::size_t(c)];
                            }
                            min_margin = std::min(
                                min_margin, std::fabs(sc) / std::sqrt(wn));
                            s.push_back({std::move(p), Label(sc >= 0 ? 1 : -1)});
                        }
                        if (min_margin > 1e-3) break;
                    }
                    if (!check_validity(scheme, s)) ++validity_failures;
                    if (!check_stability(scheme, s)) ++stability_failures;
                    max_kappa =
                        std::max(max_kappa, int(scheme.kappa(s).size()));
                }
            } else {
                fail(errc::validation, "unknown --scheme: " + check_scheme);
            }

            json out;
            out["scheme"] = check_scheme;
            out["trials"] = check_trials;
            out["validity_pass"] = validity_failures == 0;
            out["stability_pass"] = stability_failures == 0;
            out["validity_failures"] = validity_failures;
            out["stability_failures"] = stability_failures;
            out["max_kappa_size"] = max_kappa;
            sink.write(out);
            return 0;
        }

        if (*solve) {
            OutputSink sink{solve_out, command_line, 0, {solve_points}};
            Points pts;
            std::vector<Label> labels;
            load_points_csv(solve_points, pts, labels, true);
            SvmConfig cfg;
            cfg.separability_tol = solve_sep_tol;
            cfg.margin_rel_tol = solve_margin_tol;
            SvmSolution sol = hard_margin_svm(pts, labels, cfg);
            json out;
            json w = json::array();
            for (double c : sol.hypothesis.weights) w.push_back(json_number(c));
            out["w"] = w;
            out["v"] = json_number(sol.hypothesis.threshold);
            out["margin"] = json_number(sol.margin);
            out["support_indices"] = sol.support_indices;
            sink.write(out);
            return 0;
        }

        if (*bench || *sbench) {
            bool via_svm = bool(*bench);
            OutputSink sink{via_svm ? bench_out : sb_out, command_line,
                            via_svm ? bench_seed : sb_seed, {}};
            SvmBenchResult res =
                via_svm ? svm_bench(bench_dim, bench_support, bench_m,
                                    bench_delta, bench_trials, bench_seed, {},
                                    threads)
                        : svm_bench(sb_dim, sb_support, sb_m, sb_delta,
                                    sb_trials, sb_seed, {}, threads);
            json out;
            out["bound"] = json_number(res.bound);
            out["exceed_fraction"] = json_number(res.exceed_fraction);
            out["wilson_95"] = wilson_to_json(res.wilson);
            out["redraws"] = res.redraws;
            out["trials"] = res.trials;
            sink.write(out);
            return 0;
        }

        if (*pac) {
            OutputSink sink{pac_out, command_line, pac_seed, {pac_class}};
            PacInstance inst{load_class(pac_class), {}, pac_target};
            if (pac_dist == "uniform") {
                inst.distribution.probabilities.assign(
                    std::size_t(inst.cls.domain_size()),
                    1.0 / inst.cls.domain_size());
            } else {
                sink.inputs.push_back(pac_dist);
                json jd = load_json(pac_dist);
                for (const auto& p : jd.at("probabilities"))
                    inst.distribution.probabilities.push_back(p.get<double>());
            }
            int k = pac_algo == "erm"
                        ? 0
                        : resolve_k(pac_k, inst.cls, SearchCaps{pac_cap, 64});
            Learner learner = resolve_learner(pac_algo, k);

            if (pac_estimate) {
                SampleComplexityEstimate est = estimate_sample_complexity(
                    learner, inst, pac_epsilon, pac_delta, pac_trials,
                    pac_seed, 1 << 16, threads);
                json out;
                out["n"] = est.n;
                out["capped"] = est.capped;
                json trace = json::array();
                for (const auto& [n, rate, hi] : est.trace)
                    trace.push_back(json{{"n", n},
                                         {"failure_rate", json_number(rate)},
                                         {"wilson_hi", json_number(hi)}});
                out["trace"] = trace;
                sink.write(out);
                return 0;
            }

            std::vector<int> ns = pac_nlist.empty()
                                      ? std::vector<int>{pac_n}
                                      : parse_int_list(pac_nlist);
            std::vector<std::tuple<int, ExperimentResult>> rows;
            for (int n : ns) {
                ExperimentConfig cfg{pac_epsilon, pac_delta, n, pac_trials,
                                     derive_seed(pac_seed, std::uint64_t(n)),
                                     threads};
                rows.emplace_back(n, run_pac(learner, inst, cfg));
            }
            if (pac_format == "csv")
                sink.write_text(rows_csv(rows));
            else
                sink.write(rows_json(rows));
            return 0;
        }

        if (*lower) {
            OutputSink sink{lb_out, command_line, lb_seed, {}};
            int learner_k = 0;
            if (lb_algo != "erm")
                learner_k =
                    lb_learner_k == "auto"
                        ? lb_k
                        : int(std::strtol(lb_learner_k.c_str(), nullptr, 10));
            Learner learner = resolve_learner(lb_algo, learner_k);
            std::vector<int> ns = lb_nlist.empty() ? std::vector<int>{lb_n}
                                                   : parse_int_list(lb_nlist);
            std::vector<std::tuple<int, ExperimentResult>> rows;
            for (int n : ns)
                rows.emplace_back(
                    n, hollow_star_experiment(
                           lb_k, lb_epsilon, n, lb_trials,
                           derive_seed(lb_seed, std::uint64_t(n)), learner,
                           threads));
            if (lb_format == "csv")
                sink.write_text(rows_csv(rows));
            else
                sink.write(rows_json(rows));
            return 0;
        }

        if (*hard) {
            OutputSink sink{hc_out, command_line, hc_seed, {}};
            int learner_k = 0;
            if (hc_algo != "erm")
                learner_k =
                    hc_learner_k == "auto"
                        ? hc_kw
                        : int(std::strtol(hc_learner_k.c_str(), nullptr, 10));
            Learner learner = resolve_learner(hc_algo, learner_k);
            std::vector<int> ns = hc_nlist.empty() ? std::vector<int>{hc_n}
                                                   : parse_int_list(hc_nlist);
            std::vector<std::tuple<int, ExperimentResult>> rows;
            for (int n : ns)
                rows.emplace_back(
                    n, hard_class_experiment(
                           hc_d, hc_kw, hc_epsilon, n, hc_trials,
                           derive_seed(hc_seed, std::uint64_t(n)), learner,
                           threads));
            if (hc_format == "csv")
                sink.write_text(rows_csv(rows));
            else
                sink.write(rows_json(rows));
            return 0;
        }

        if (*coupon) {
            OutputSink sink{cp_out, command_line, cp_seed, {}};
            CouponResult res =
                coupon_collector(cp_k, cp_m, cp_trials, cp_seed, threads);
            json out;
            out["k"] = cp_k;
            out["m"] = cp_m;
            out["trials"] = res.trials;
            out["lemma_bound"] = json_number(res.lemma_bound);
            out["empirical_median"] = json_number(res.empirical_median);
            out["empirical_mean"] = json_number(res.empirical_mean);
            sink.write(out);
            return 0;
        }

        fail(errc::validation, "no subcommand given");
    } catch (const Error& e) {
        json err;
        err["error"] =
            json{{"code", errc_name(e.code())}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        return errc_exit_code(e.code());
    } catch (const std::exception& e) {
        json err;
        err["error"] = json{{"code", "VALIDATION"}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 2;
    }
    return 0;
}
