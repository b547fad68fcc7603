#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "uplab/report.hpp"

using namespace uplab;

namespace {

struct CommonOpts {
    std::vector<std::size_t> dims;
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    std::vector<std::string> tol;
    std::string output = "pretty";
    std::string out_path;
    unsigned threads = 1;
};

void add_common(CLI::App* sub, CommonOpts& o, const char* dims_help) {
    sub->add_option("--dims", o.dims, dims_help)->delimiter(',')->envname("UPLAB_DIMS");
    sub->add_option("--trials", o.trials, "random trials per identity per dim")
        ->envname("UPLAB_TRIALS");
    sub->add_option("--seed", o.seed, "base seed; per-trial seeds are derived from it")
        ->envname("UPLAB_SEED");
    sub->add_option("--tol", o.tol, "tolerance override, identity=value (repeatable)")
        ->envname("UPLAB_TOL");
    sub->add_option("--output", o.output, "output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}))
        ->envname("UPLAB_OUTPUT");
    sub->add_option("--out", o.out_path, "write the report to a file instead of stdout")
        ->envname("UPLAB_OUT");
    sub->add_option("--threads", o.threads, "trial-level worker threads")
        ->envname("UPLAB_THREADS");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    return OutputFormat::pretty;
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& kv) {
    std::map<std::string, double> out;
    for (const auto& item : kv) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("bad --tol entry, expected identity=value: " + item);
        out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return out;
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file: " << out_path << "\n";
        return 2;
    }
    f << text;
    return f.good() ? 0 : 2;
}

int cmd_verify(const CommonOpts& o) {
    RunConfig cfg;
    if (!o.dims.empty()) cfg.dims = o.dims;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.tolerances = parse_tolerances(o.tol);
    cfg.output = parse_format(o.output);
    cfg.threads = o.threads;
    const auto report = run_verify(cfg);

    std::string text;
    switch (cfg.output) {
        case OutputFormat::json: text = report_to_json(report).dump(2) + "\n"; break;
        case OutputFormat::csv: text = report_to_csv(report); break;
        case OutputFormat::pretty: text = report_to_pretty(report); break;
    }
    const int io = emit(text, o.out_path);
    if (io != 0) return io;
    return report.pass ? 0 : 1;
}

int cmd_witness(const CommonOpts& o, const std::string& family_name) {
    std::vector<std::size_t> half_widths =
        o.dims.empty() ? std::vector<std::size_t>{4, 8, 16, 32, 64, 128} : o.dims;
    WitnessFamily family = WitnessFamily::projector_difference;
    if (family_name == "hilbert") family = WitnessFamily::hilbert_kernel;
    else if (family_name == "uniform") family = WitnessFamily::uniform_projector;

    const auto series = witness_growth(half_widths, family);
    std::string text;
    switch (parse_format(o.output)) {
        case OutputFormat::json: text = growth_to_json(series).dump(2) + "\n"; break;
        case OutputFormat::csv: text = growth_to_csv(series); break;
        case OutputFormat::pretty: text = growth_to_pretty(series); break;
    }
    return emit(text, o.out_path);
}

int cmd_pairing(const CommonOpts& o) {
    std::vector<std::size_t> sizes = o.dims;
    if (sizes.empty())
        for (std::size_t n = 1; n <= 8; ++n) sizes.push_back(n);
    for (std::size_t n : sizes)
        if (n == 0) throw std::invalid_argument("pairing: sizes must be positive");
    const auto tols = parse_tolerances(o.tol);
    const double tol = tols.count("pairing") ? tols.at("pairing") : 1e-8;
    const auto rep = run_pairing(sizes, tol);

    std::string text;
    switch (parse_format(o.output)) {
        case OutputFormat::json: text = pairing_to_json(rep).dump(2) + "\n"; break;
        case OutputFormat::csv: text = pairing_to_csv(rep); break;
        case OutputFormat::pretty: text = pairing_to_pretty(rep); break;
    }
    const int io = emit(text, o.out_path);
    if (io != 0) return io;
    return rep.pass ? 0 : 1;
}

int cmd_bracket(const CommonOpts& o, const std::string& x1_path, const std::string& x2_path) {
    auto load = [](const std::string& path) {
        std::ifstream f(path);
        if (!f) throw std::invalid_argument("cannot open input file: " + path);
        nlohmann::json j;
        f >> j;
        return matrix_from_json(j);
    };
    const ComplexMatrix x1 = load(x1_path);
    const ComplexMatrix x2 = load(x2_path);
    if (x1.dim() != x2.dim()) throw std::invalid_argument("bracket: dimension mismatch");

    const ComplexMatrix b_comm =
        commutator(b_plus_recovery(class_of(x1)), b_plus_recovery(class_of(x2)));
    const QuotientClass bracket = quotient_bracket(class_of(x1), class_of(x2));

    std::string text;
    if (parse_format(o.output) == OutputFormat::pretty) {
        char line[160];
        auto dump = [&line](const ComplexMatrix& m, std::string& text) {
            for (std::size_t i = 0; i < m.dim(); ++i) {
                for (std::size_t j = 0; j < m.dim(); ++j) {
                    std::snprintf(line, sizeof(line), " (%+.6g%+.6gi)", m(i, j).real(),
                                  m(i, j).imag());
                    text += line;
                }
                text += '\n';
            }
        };
        text = "quotient bracket representative (Hermitian):\n";
        dump(bracket.rep(), text);
        text += "b+ commutator:\n";
        dump(b_comm, text);
    } else {
        nlohmann::json j = {{"command", "bracket"},
                            {"bracket_class", class_to_json(bracket)},
                            {"b_plus_commutator", matrix_to_json(b_comm)}};
        text = j.dump(2) + "\n";
    }
    return emit(text, o.out_path);
}

int cmd_info() {
    std::cout << "uplab: finite-dimensional laboratory for the Poisson-Lie structure on U(n)\n\n";
    std::cout << "identities checked by `verify` (name, default relative tolerance):\n";
    for (const auto& spec : verify_detail::identity_specs()) {
        char line[96];
        std::snprintf(line, sizeof(line), "  %-18s %.0e\n", spec.name, spec.default_tol);
        std::cout << line;
    }
    std::cout << "\nwitness families for `witness --witness ...`: difference (default), "
                 "uniform, hilbert\n";
    std::cout << "matrix file format: {\"dim\": n, \"re\": [[...]], \"im\": [[...]]}\n";
    std::cout << "environment overrides: UPLAB_DIMS, UPLAB_TRIALS, UPLAB_SEED, UPLAB_TOL,\n"
                 "  UPLAB_OUTPUT, UPLAB_OUT, UPLAB_THREADS\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the Poisson-Lie group structure on U(n)"};
    app.require_subcommand(1);

    CommonOpts vo, wo, po, bo;
    std::string witness_family = "difference";
    std::string x1_path, x2_path;

    auto* verify = app.add_subcommand("verify", "run the identity verification suites");
    add_common(verify, vo, "window dimensions 2N (default 2,4,8,16)");

    auto* witness = app.add_subcommand("witness", "triangular-truncation growth experiment");
    add_common(witness, wo, "window half-widths N (default 4,8,16,32,64,128)");
    witness->add_option("--witness", witness_family, "witness family")
        ->check(CLI::IsMember({"difference", "uniform", "hilbert"}))
        ->envname("UPLAB_WITNESS");

    auto* pairing = app.add_subcommand("pairing", "nondegeneracy of the duality pairing");
    add_common(pairing, po, "matrix sizes n (default 1..8)");

    auto* bracket = app.add_subcommand("bracket", "quotient Lie bracket of two matrix files");
    bracket->add_option("x1", x1_path, "first matrix JSON file")->required();
    bracket->add_option("x2", x2_path, "second matrix JSON file")->required();
    bracket->add_option("--output", bo.output, "output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}))
        ->envname("UPLAB_OUTPUT");
    bracket->add_option("--out", bo.out_path, "write the result to a file instead of stdout")
        ->envname("UPLAB_OUT");

    auto* info = app.add_subcommand("info", "print identities, tolerances and formats");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(vo);
        if (witness->parsed()) return cmd_witness(wo, witness_family);
        if (pairing->parsed()) return cmd_pairing(po);
        if (bracket->parsed()) return cmd_bracket(bo, x1_path, x2_path);
        if (info->parsed()) return cmd_info();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
