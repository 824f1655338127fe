#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "convpow/fixtures.hpp"
#include "convpow/io.hpp"
#include "convpow/kernels.hpp"
#include "convpow/llt.hpp"

namespace {

using namespace convpow;

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;

std::vector<std::int64_t> parse_n_list(const std::string& arg) {
    std::vector<std::int64_t> out;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoll(item));
    }
    if (out.empty()) throw std::runtime_error("empty n list");
    return out;
}

LatticeFunction load_input(const std::string& path) {
    if (const ExampleFixture* fx = find_fixture(path)) return fx->function;
    return load_lattice_function(path);
}

int cmd_analyze(const std::string& input, bool verdict_only) {
    LatticeFunction f;
    try {
        f = load_input(input);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        const SymbolAnalysis an = analyze(f);
        const LatticeFunction f0 = scale(f, cplx(1.0 / an.normalization, 0.0));
        const SymbolAnalysis an0 = analyze(f0);
        const StabilityVerdict v = classify_stability(an0, f0);
        nlohmann::json j;
        if (verdict_only) {
            j = to_json(v);
        } else {
            j = to_json(an);
            j["verdict"] = to_json(v);
        }
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "degenerate analysis: " << e.what() << "\n";
        return kExitDegenerate;
    }
}

int cmd_power(const std::string& input, std::int64_t n, const std::string& method) {
    LatticeFunction f;
    try {
        f = load_input(input);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    PowerMethod m = PowerMethod::Squaring;
    if (method == "direct") m = PowerMethod::Direct;
    else if (method == "squaring") m = PowerMethod::Squaring;
    else if (method == "fft") m = PowerMethod::Fft;
    else {
        std::cerr << "input error: unknown method " << method << "\n";
        return kExitInput;
    }
    if (n < 0 || n > 1000000) {
        std::cerr << "input error: n out of range\n";
        return kExitInput;
    }
    if (n > 4096 && m != PowerMethod::Fft) {
        std::cerr << "input error: n > 4096 requires --method fft\n";
        return kExitInput;
    }
    const LatticeFunction p = power(f, n, m);
    std::cout << "x,re,im\n";
    for (std::int64_t x = p.min_index(); x <= p.max_index(); ++x) {
        const cplx v = p.at(x);
        std::cout << x << "," << format_double(v.real()) << "," << format_double(v.imag())
                  << "\n";
    }
    return kExitOk;
}

int cmd_llt_compare(const std::string& input, const std::string& ns, const std::string& csv_path,
                    const std::string& summary_path, int threads) {
    LatticeFunction f;
    std::vector<std::int64_t> n_list;
    try {
        f = load_input(input);
        n_list = parse_n_list(ns);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        SymbolAnalysis an = analyze(f);
        LatticeFunction f0 = f;
        if (std::abs(an.normalization - 1.0) > 1e-9) {
            f0 = scale(f, cplx(1.0 / an.normalization, 0.0));
            an = analyze(f0);
        }
        const auto reports = llt_error_curve(f0, an, n_list, threads);

        std::ofstream csv_file;
        std::ostream* csv = &std::cout;
        if (!csv_path.empty()) {
            csv_file.open(csv_path);
            if (!csv_file) throw std::runtime_error("cannot open " + csv_path);
            csv = &csv_file;
        }
        *csv << "n,x,exact_re,exact_im,approx_re,approx_im\n";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const LatticeFunction exact = power(f0, n_list[i], PowerMethod::Fft);
            const auto& rep = reports[i];
            for (std::int64_t x = exact.min_index(); x <= exact.max_index(); ++x) {
                const cplx e = exact.at(x);
                const cplx a = rep.approx[static_cast<std::size_t>(x - rep.window_offset)];
                *csv << rep.n << "," << x << "," << format_double(e.real()) << ","
                     << format_double(e.imag()) << "," << format_double(a.real()) << ","
                     << format_double(a.imag()) << "\n";
            }
        }

        nlohmann::json summary;
        summary["scaled_sup_errors"] = nlohmann::json::object();
        for (const auto& rep : reports)
            summary["scaled_sup_errors"][std::to_string(rep.n)] = rep.sup_error_scaled;
        if (!summary_path.empty()) {
            std::ofstream sf(summary_path);
            if (!sf) throw std::runtime_error("cannot open " + summary_path);
            sf << summary.dump(2) << "\n";
        } else {
            std::cerr << summary.dump(2) << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "degenerate analysis: " << e.what() << "\n";
        return kExitDegenerate;
    }
}

int cmd_kernel_eval(int m, double b, double from, double to, double step) {
    try {
        const KernelSpec spec =
            (m == 3 && b == 0.0) ? KernelSpec::airy() : KernelSpec::even(m, b);
        const KernelEvaluator H(spec);
        std::cout << "x,re,im\n";
        if (step <= 0.0) step = 1.0;
        for (double x = from; x <= to + 1e-12; x += step) {
            const cplx v = H(x);
            std::cout << format_double(x) << "," << format_double(v.real()) << ","
                      << format_double(v.imag()) << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
}

int cmd_carne_verify(const std::string& graph, int dim, int k, double s, const std::string& ns,
                     std::uint64_t seed) {
    try {
        BandedHermitian M = [&]() {
            if (graph == "path") return BandedHermitian::lazy_path(dim);
            std::ifstream in(graph);
            if (!in) throw std::runtime_error("cannot open " + graph);
            std::vector<std::tuple<std::int64_t, std::int64_t, double>> edges;
            std::int64_t x, y;
            double w;
            while (in >> x >> y >> w) edges.emplace_back(x, y, w);
            return BandedHermitian::from_edges(edges);
        }();
        const WalkParams params(s, k);
        const std::vector<std::int64_t> n64 = parse_n_list(ns);
        std::vector<int> n_list(n64.begin(), n64.end());
        const int n_max = *std::max_element(n_list.begin(), n_list.end());

        nlohmann::json j;
        j["discrepancy"] = transmutation_check(M, params, std::min(n_max, 200), 20, seed);
        j["bound_constants"] = to_json(carne_bound_report(M, k, n_list, 0.1));
        try {
            j["diag_ratios"] = to_json(diag_lower_check(M, k, n_list));
        } catch (const std::exception& e) {
            j["diag_ratios"] = {{"error", e.what()}};
        }
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
}

int cmd_examples(const std::string& action, const std::string& name, std::uint64_t seed) {
    if (action == "list") {
        for (const auto& fx : fixture_registry())
            std::cout << fx.name << "  [" << fx.provenance << "]  " << fx.description << "\n";
        return kExitOk;
    }
    if (action != "run") {
        std::cerr << "input error: examples expects 'list' or 'run <name>'\n";
        return kExitInput;
    }
    const ExampleFixture* fx = find_fixture(name);
    if (fx == nullptr) {
        std::cerr << "input error: unknown fixture '" << name << "'\n";
        return kExitInput;
    }
    std::cout << fx->name << "  [" << fx->provenance << "]  " << fx->description << "\n";
    const bool ok = fx->run(std::cout, seed);
    std::cout << (ok ? "PASS" : "FAIL") << " " << fx->name << "\n";
    return ok ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convolution-power analysis on the integer lattice"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    int threads = 1;
    app.add_option("--seed", seed, "seed for randomized suites");
    app.add_option("--threads", threads, "internal data-parallel threads");

    std::string input, method = "squaring", ns = "200,800,3200";
    std::int64_t n = 1;

    auto* analyze_cmd = app.add_subcommand("analyze", "symbol analysis + stability verdict");
    analyze_cmd->add_option("input", input, "function file or fixture name")->required();

    auto* classify_cmd = app.add_subcommand("classify", "stability verdict only");
    classify_cmd->add_option("input", input, "function file or fixture name")->required();

    auto* power_cmd = app.add_subcommand("power", "convolution power as CSV");
    power_cmd->add_option("input", input, "function file or fixture name")->required();
    power_cmd->add_option("--n", n, "power index")->required();
    power_cmd->add_option("--method", method, "direct|squaring|fft");

    std::string csv_path, summary_path;
    auto* llt_cmd = app.add_subcommand("llt-compare", "exact power versus kernel limit");
    llt_cmd->add_option("--input", input, "function file or fixture name")->required();
    llt_cmd->add_option("--n", ns, "comma-separated list of powers");
    llt_cmd->add_option("--csv", csv_path, "CSV output path (default stdout)");
    llt_cmd->add_option("--summary", summary_path, "summary JSON path (default stderr)");

    int km = 2;
    double kb = 0.0, kfrom = 0.0, kto = 0.0, kstep = 1.0;
    auto* kernel_cmd = app.add_subcommand("kernel-eval", "kernel values as CSV");
    kernel_cmd->add_option("--m", km, "kernel order (even, or 3 for the Airy kernel)")->required();
    kernel_cmd->add_option("--b", kb, "imaginary tilt");
    kernel_cmd->add_option("--from", kfrom, "start of x grid")->required();
    kernel_cmd->add_option("--to", kto, "end of x grid")->required();
    kernel_cmd->add_option("--step", kstep, "grid step");

    std::string graph = "path";
    int cdim = 401, ck = 2;
    double cs = 0.5;
    std::string cns = "25,50,100";
    auto* carne_cmd = app.add_subcommand("carne-verify", "transmutation and bound reports");
    carne_cmd->add_option("--graph", graph, "'path' or an edge-list file 'x y weight'");
    carne_cmd->add_option("--dim", cdim, "path length");
    carne_cmd->add_option("--k", ck, "power of the Laplacian");
    carne_cmd->add_option("--s", cs, "walk holding parameter");
    carne_cmd->add_option("--n", cns, "comma-separated list of powers");

    std::string ex_action, ex_name;
    auto* examples_cmd = app.add_subcommand("examples", "fixture library");
    examples_cmd->add_option("action", ex_action, "list|run")->required();
    examples_cmd->add_option("name", ex_name, "fixture name for run");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(input, false);
        if (classify_cmd->parsed()) return cmd_analyze(input, true);
        if (power_cmd->parsed()) return cmd_power(input, n, method);
        if (llt_cmd->parsed()) return cmd_llt_compare(input, ns, csv_path, summary_path, threads);
        if (kernel_cmd->parsed()) return cmd_kernel_eval(km, kb, kfrom, kto, kstep);
        if (carne_cmd->parsed()) return cmd_carne_verify(graph, cdim, ck, cs, cns, seed);
        if (examples_cmd->parsed()) return cmd_examples(ex_action, ex_name, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
