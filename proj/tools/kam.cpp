// kam - operator means, Log-Euclidean geometry and structure projections for
// positive definite matrices over R, C and H.
//
// Exit codes: 0 success / verification pass, 1 verification failure,
// 2 input error, 3 numerical failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kam/kam.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalError = 3;

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw kam::ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

kam::AnyMatrix load_matrix(const std::string& path) {
    return kam::parse_matrix_document(read_file(path));
}

void print_matrix(const kam::AnyMatrix& m) {
    std::cout << kam::serialize_matrix_document(m) << "\n";
}

void print_scalar(double v) {
    std::printf("%.17g\n", v);
}

template <typename F>
kam::AnyMatrix visit_same_algebra(const kam::AnyMatrix& a, const kam::AnyMatrix& b, F&& f) {
    return std::visit(
        [&](const auto& x, const auto& y) -> kam::AnyMatrix {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::decay_t<decltype(y)>>)
                return f(x, y);
            else
                throw kam::AlgebraMismatch("operands use different algebras");
        },
        a, b);
}

template <typename F>
double visit_same_algebra_scalar(const kam::AnyMatrix& a, const kam::AnyMatrix& b, F&& f) {
    return std::visit(
        [&](const auto& x, const auto& y) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::decay_t<decltype(y)>>)
                return f(x, y);
            else
                throw kam::AlgebraMismatch("operands use different algebras");
        },
        a, b);
}

kam::Algebra parse_algebra(const std::string& s) {
    if (s == "R") return kam::Algebra::R;
    if (s == "C") return kam::Algebra::C;
    if (s == "H") return kam::Algebra::H;
    throw kam::ParseError("algebra must be R, C or H, got '" + s + "'");
}

const char* path_name(kam::MeanPath p) {
    switch (p) {
        case kam::MeanPath::direct: return "direct";
        case kam::MeanPath::closed_form_2x2: return "closed_form_2x2";
        default: return "trace_det";
    }
}

int run_mean(const std::string& fname, std::optional<double> t, const std::string& path_choice,
             const std::string& file_a, const std::string& file_b) {
    const kam::AnyMatrix a = load_matrix(file_a);
    const kam::AnyMatrix b = load_matrix(file_b);

    if (path_choice == "trace-det") {
        if (fname != "geometric")
            throw kam::ParseError("--path trace-det only applies to the geometric mean");
        print_matrix(visit_same_algebra(a, b, [](const auto& x, const auto& y) -> kam::AnyMatrix {
            return kam::geometric_mean_trace_det(x, y);
        }));
        return kExitPass;
    }

    const kam::RepresentingFunction f = kam::make_representing_function(fname, t);
    if (const auto warning = kam::check_representing_function(f))
        std::cerr << "warning: " << *warning << "\n";

    if (path_choice == "closed-form") {
        print_matrix(visit_same_algebra(a, b, [&](const auto& x, const auto& y) -> kam::AnyMatrix {
            auto r = kam::mean_2x2_closed_form(x, y, f);
            std::cerr << "path=" << path_name(r.path) << " eigen_gap=" << r.eigen_gap << "\n";
            return r.value;
        }));
        return kExitPass;
    }

    print_matrix(visit_same_algebra(a, b, [&](const auto& x, const auto& y) -> kam::AnyMatrix {
        auto r = kam::kubo_ando_mean(x, y, f);
        std::cerr << "path=" << path_name(r.path) << " eigen_gap=" << r.eigen_gap
                  << " herm_residual=" << r.herm_residual << "\n";
        return r.value;
    }));
    return kExitPass;
}

int run_dist(bool scaled, const std::string& file_a, const std::string& file_b) {
    const kam::AnyMatrix a = load_matrix(file_a);
    const kam::AnyMatrix b = load_matrix(file_b);
    if (!scaled) {
        print_scalar(visit_same_algebra_scalar(a, b, [](const auto& x, const auto& y) {
            return kam::log_euclidean_distance(x, y);
        }));
        return kExitPass;
    }
    // scaled distance lives on the embedded cones: real inputs are checked
    // against the realified image, complex inputs against the complexified one
    print_scalar(visit_same_algebra_scalar(a, b, [](const auto& x, const auto& y) -> double {
        using S = typename std::decay_t<decltype(x)>::value_type;
        if constexpr (kam::algebra_of_v<S> == kam::Algebra::H)
            throw kam::ParseError("--scaled expects matrices over R or C");
        else
            return kam::scaled_distance_on_image(x, y);
    }));
    return kExitPass;
}

int run_bary(const std::string& weights_csv, const std::vector<std::string>& files) {
    kam::WeightVector weights;
    std::stringstream ss(weights_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            weights.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw kam::ParseError("bad weight '" + tok + "'");
        }
    }
    if (files.empty()) throw kam::ParseError("bary needs at least one matrix file");
    std::vector<kam::AnyMatrix> mats;
    for (const auto& f : files) mats.push_back(load_matrix(f));

    const kam::AnyMatrix out = std::visit(
        [&](const auto& first) -> kam::AnyMatrix {
            using M = std::decay_t<decltype(first)>;
            std::vector<M> family;
            for (const auto& any : mats) {
                const M* p = std::get_if<M>(&any);
                if (p == nullptr)
                    throw kam::AlgebraMismatch("barycenter inputs use different algebras");
                family.push_back(*p);
            }
            return kam::log_euclidean_barycenter(family, weights);
        },
        mats.front());
    print_matrix(out);
    return kExitPass;
}

int run_embed(const std::string& to, const std::string& file) {
    const kam::AnyMatrix m = load_matrix(file);
    const kam::Algebra target = parse_algebra(to);
    const kam::Algebra source = kam::algebra_of_any(m);
    if (target == kam::Algebra::C && source == kam::Algebra::H) {
        print_matrix(kam::complexify(std::get<kam::Matrix<kam::Quaternion>>(m)));
        return kExitPass;
    }
    if (target == kam::Algebra::R && source == kam::Algebra::C) {
        print_matrix(kam::realify(std::get<kam::Matrix<kam::Complex>>(m)));
        return kExitPass;
    }
    if (target == kam::Algebra::R && source == kam::Algebra::H) {
        print_matrix(kam::realify(kam::complexify(std::get<kam::Matrix<kam::Quaternion>>(m))));
        return kExitPass;
    }
    throw kam::AlgebraMismatch(std::string("cannot embed algebra ") + kam::algebra_name(source) +
                               " into " + kam::algebra_name(target));
}

int run_extract(const std::string& from, const std::string& file) {
    const kam::AnyMatrix m = load_matrix(file);
    const kam::Algebra source = parse_algebra(from);
    if (source == kam::Algebra::R) {
        const auto* y = std::get_if<kam::Matrix<double>>(&m);
        if (y == nullptr) throw kam::AlgebraMismatch("extract --from R expects a real matrix");
        print_matrix(kam::realify_inv(*y));
        return kExitPass;
    }
    if (source == kam::Algebra::C) {
        const auto* y = std::get_if<kam::Matrix<kam::Complex>>(&m);
        if (y == nullptr) throw kam::AlgebraMismatch("extract --from C expects a complex matrix");
        print_matrix(kam::complexify_inv(*y));
        return kExitPass;
    }
    throw kam::ParseError("extract --from must be R or C");
}

int run_project(const std::string& structure, const std::string& file) {
    const kam::AnyMatrix m = load_matrix(file);
    if (structure == "hermitian") {
        print_matrix(std::visit(
            [](const auto& x) -> kam::AnyMatrix { return kam::hermitian_part(x); }, m));
        return kExitPass;
    }
    if (structure == "complex") {
        const auto* y = std::get_if<kam::Matrix<double>>(&m);
        if (y == nullptr)
            throw kam::AlgebraMismatch("--structure complex expects a real matrix");
        std::cerr << "off-diagonal symmetric defect |Y+Y^t|_F = "
                  << kam::complex_structure_defect(*y) << "\n";
        print_matrix(kam::project_to_complex_structure(*y));
        return kExitPass;
    }
    if (structure == "quaternionic") {
        const auto* y = std::get_if<kam::Matrix<kam::Complex>>(&m);
        if (y == nullptr)
            throw kam::AlgebraMismatch("--structure quaternionic expects a complex matrix");
        print_matrix(kam::project_to_quaternionic_structure(*y));
        return kExitPass;
    }
    throw kam::ParseError("--structure must be hermitian, complex or quaternionic");
}

int run_gen(const std::string& algebra, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw kam::ShapeError("--n must be at least 1");
    print_matrix(kam::gen_random_hpd(parse_algebra(algebra), n, seed));
    return kExitPass;
}

int run_verify(const std::string& suite, int trials, std::uint64_t seed,
               std::optional<double> tol) {
    const auto reports = kam::run_verify_suite(suite, trials, seed, tol);
    bool all_pass = true;
    for (const auto& r : reports) {
        nlohmann::json line{{"suite", r.suite},        {"trials", r.trials},
                            {"max_residual", r.max_residual}, {"tolerance", r.tolerance},
                            {"pass", r.pass},          {"seed", r.seed}};
        std::cout << line.dump() << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? kExitPass : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator means and structure projections for positive definite matrices over R, C and H"};
    app.require_subcommand(1);

    std::string fname, path_choice = "direct", file_a, file_b, weights_csv;
    std::string to, from, structure, algebra = "R", suite = "all";
    std::vector<std::string> files;
    std::optional<double> t_param, tol;
    std::size_t gen_n = 2;
    std::uint64_t seed = 42;
    int trials = 200;
    bool scaled = false;

    auto* mean = app.add_subcommand("mean", "Kubo-Ando mean of two positive definite matrices");
    mean->add_option("--f", fname, "representing function name")->required();
    mean->add_option("--t", t_param, "weighted-geometric exponent in [0, 1]");
    mean->add_option("--path", path_choice, "evaluation path")
        ->check(CLI::IsMember({"direct", "closed-form", "trace-det"}));
    mean->add_option("A", file_a, "matrix document")->required();
    mean->add_option("B", file_b, "matrix document")->required();

    auto* dist = app.add_subcommand("dist", "Log-Euclidean distance");
    dist->add_flag("--scaled", scaled, "rescaled distance on the embedded cone");
    dist->add_option("A", file_a)->required();
    dist->add_option("B", file_b)->required();

    auto* bary = app.add_subcommand("bary", "weighted Log-Euclidean barycenter");
    bary->add_option("--weights", weights_csv, "comma-separated positive weights summing to 1")
        ->required();
    bary->add_option("files", files, "matrix documents")->required();

    auto* embed = app.add_subcommand("embed", "embed a matrix into the next larger algebra");
    embed->add_option("--to", to, "target algebra (R or C)")->required();
    embed->add_option("X", file_a)->required();

    auto* extract = app.add_subcommand("extract", "invert an embedding on its image");
    extract->add_option("--from", from, "source algebra of the embedded matrix (R or C)")
        ->required();
    extract->add_option("Y", file_a)->required();

    auto* project = app.add_subcommand("project", "Frobenius-nearest structured matrix");
    project->add_option("--structure", structure, "hermitian, complex or quaternionic")
        ->required();
    project->add_option("X", file_a)->required();

    auto* gen = app.add_subcommand("gen", "deterministic random Hermitian positive definite matrix");
    gen->add_option("--algebra", algebra, "R, C or H")->required();
    gen->add_option("--n", gen_n, "matrix size")->required();
    gen->add_option("--seed", seed, "random seed");

    auto* verify = app.add_subcommand("verify", "run randomized verification suites");
    verify->add_option("--suite", suite, "suite name or 'all'");
    verify->add_option("--trials", trials, "trials per suite");
    verify->add_option("--seed", seed, "base seed");
    verify->add_option("--tol", tol, "override the suite tolerance");

    try {
        app.parse(argc, argv);
        if (mean->parsed()) return run_mean(fname, t_param, path_choice, file_a, file_b);
        if (dist->parsed()) return run_dist(scaled, file_a, file_b);
        if (bary->parsed()) return run_bary(weights_csv, files);
        if (embed->parsed()) return run_embed(to, file_a);
        if (extract->parsed()) return run_extract(from, file_a);
        if (project->parsed()) return run_project(structure, file_a);
        if (gen->parsed()) return run_gen(algebra, gen_n, seed);
        if (verify->parsed()) return run_verify(suite, trials, seed, tol);
        return kExitInputError;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitInputError;
    } catch (const kam::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const kam::ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const kam::ArityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const kam::AlgebraMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const kam::DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const kam::WeightMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const kam::OddDimension& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const kam::UnknownSuite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const kam::Error& e) {
        // NotHermitian, NotPositiveDefinite, NotInImage, ConvergenceFailure,
        // InvalidSpectrumData, FunctionDomainError
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    }
}
