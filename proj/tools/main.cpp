// expsolve: finite-order solutions of linear ODEs with exponential-sum
// coefficients. Subcommands: solve, verify, indicial, transform.

#include <complex>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "expsolve/io.hpp"

namespace {

using namespace expsolve;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_parse = 2;
constexpr int exit_unsupported = 3;
constexpr int exit_numeric = 4;
constexpr int exit_cap = 5;

struct CommonFlags {
    std::string mode = "exact";
    double tol = 1e-9;
    long max_degree = 500;
    long snap_denominator_bound = 64;
    double cluster_tol = 1e-8;
    double class_tol = 1e-8;
    double merge_tol = 1e-9;
    std::string json_path;

    SolveOptions solve_options() const {
        SolveOptions o;
        o.max_degree = max_degree;
        o.tol = tol;
        o.roots.cluster_tol = cluster_tol;
        o.roots.class_tol = class_tol;
        o.roots.snap_denominator_bound = snap_denominator_bound;
        return o;
    }
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool with_solver_flags) {
    cmd->add_option("--mode", f.mode, "exact|numeric (default exact)")
        ->check(CLI::IsMember({"exact", "numeric"}));
    cmd->add_option("--tol", f.tol, "residual tolerance, relative (default 1e-9)");
    cmd->add_option("--json", f.json_path, "write the JSON report to this path ('-' = stdout)");
    if (with_solver_flags) {
        cmd->add_option("--max-degree", f.max_degree, "degree candidate cap (default 500)");
        cmd->add_option("--snap-denominator-bound", f.snap_denominator_bound,
                        "denominator bound for snapping numeric roots (default 64)");
        cmd->add_option("--cluster-tol", f.cluster_tol, "numeric root cluster tolerance");
        cmd->add_option("--class-tol", f.class_tol, "integer-difference class tolerance");
        cmd->add_option("--merge-tol", f.merge_tol, "frequency merge tolerance");
    }
}

void emit_json(const json& doc, const std::string& path) {
    if (path.empty())
        return;
    if (path == "-") {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw parse_error("cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

json normalization_to_json(const NormalizedProblem& np) {
    return {{"lambda_prime", np.lambda_prime.get_str()},
            {"flipped", np.flipped},
            {"shift", np.shift_m},
            {"gamma", np.gamma},
            {"leading_was_unit", np.leading_was_unit}};
}

std::string class_roots_text(const RootClass& cls) {
    std::string s;
    for (size_t i = 0; i < cls.offsets.size(); ++i) {
        if (i)
            s += ", ";
        Scalar member = cls.base + Scalar(long(cls.offsets[i])).in_mode(cls.base.mode());
        s += format_scalar(member);
        if (cls.multiplicities[i] > 1)
            s += " (x" + std::to_string(cls.multiplicities[i]) + ")";
    }
    return s;
}

int cmd_solve(const std::string& path, const CommonFlags& flags) {
    ExpSum::set_default_merge_tolerance(flags.merge_tol);
    RawProblem raw = load_problem(path);
    NormalizedProblem np = normalize(raw);
    bool numeric = flags.mode == "numeric";
    NormalizedProblem work = numeric ? np.to_approx() : np;

    SolutionBasis basis = solve_all(work, flags.solve_options());
    std::vector<RootClass> classes;
    for (const ClassReport& r : basis.classes)
        classes.push_back(r.cls);

    // map each solution back to the raw variable and verify there, so a
    // normalization bug cannot certify itself
    RawProblem raw_check = numeric ? raw.to_approx() : raw;
    double scale = 0;
    for (const ExpSum& a : raw_check.coeffs)
        scale = std::max(scale, a.max_coeff_magnitude());
    scale = std::max(scale, raw_check.leading.max_coeff_magnitude());

    json out_basis = json::array();
    std::vector<ExpSum> raw_solutions;
    for (size_t i = 0; i < basis.assembled.size(); ++i) {
        ExpSum mapped = denormalize_solution(basis.assembled[i], work);
        ExpSum r = residual(mapped, mapped.has_approx() ? raw_check.to_approx() : raw_check);
        ZeroCheck z = is_zero(r, flags.tol, scale);
        if (!z.zero)
            throw internal_error("denormalized solution fails raw-problem verification");
        raw_solutions.push_back(mapped);
        out_basis.push_back({{"terms", expsum_to_json(mapped)},
                             {"verified", true},
                             {"residual_magnitude", z.worst_magnitude},
                             {"exact", !mapped.has_approx()}});
    }

    json indicial_coeffs = json::array();
    for (int k = 0; k <= std::max(basis.indicial.degree(), 0); ++k)
        indicial_coeffs.push_back(format_scalar(basis.indicial.coeff(k)));
    json class_reports = json::array();
    for (const ClassReport& r : basis.classes) {
        json cands = json::array();
        for (long c : r.candidates)
            cands.push_back(c);
        class_reports.push_back({{"base", format_scalar(r.cls.base)},
                                 {"degree_candidates", cands},
                                 {"dimension", r.dimension}});
    }
    json pure = json::array();
    for (const Scalar& f : basis.pure_frequencies)
        pure.push_back(format_scalar(f));
    json pivot_slots = json::array();
    for (const auto& [freq, zpow] : basis.independence.pivot_slots)
        pivot_slots.push_back({{"freq", format_scalar(freq)}, {"zpow", zpow}});

    json doc = {{"basis", out_basis},
                {"metadata",
                 {{"order", np.n},
                  {"mode", numeric ? "numeric" : "exact"},
                  {"indicial", {{"variable", "x"}, {"coefficients", indicial_coeffs}}},
                  {"normalization", normalization_to_json(np)},
                  {"root_report", root_set_to_json(basis.roots, classes)},
                  {"class_reports", class_reports},
                  {"pure_exponential_frequencies", pure},
                  {"independence_rank", basis.independence.rank},
                  {"independence_pivots", pivot_slots},
                  {"solution_count", basis.assembled.size()}}}};
    emit_json(doc, flags.json_path);

    if (flags.json_path != "-") {
        std::cout << "order " << np.n << ", gamma " << np.gamma << ", lambda' "
                  << np.lambda_prime.get_str() << (np.flipped ? ", flipped" : "") << "\n";
        std::cout << "indicial polynomial: " << basis.indicial.str() << "\n";
        std::cout << "roots:\n";
        for (const Root& r : basis.roots.roots)
            std::cout << "  " << format_scalar(r.value) << "  multiplicity " << r.multiplicity
                      << "  " << (r.exact ? "exact" : "approx") << "\n";
        for (size_t c = 0; c < basis.classes.size(); ++c) {
            const ClassReport& r = basis.classes[c];
            std::cout << "class " << c << " (roots " << class_roots_text(r.cls) << "): ";
            if (r.dimension == 0) {
                std::cout << "no finite-order solutions";
                if (r.candidates.empty())
                    std::cout << " (no admissible polynomial degree)";
                else
                    std::cout << " (trivial nullspace)";
            } else {
                std::cout << r.dimension << " solution" << (r.dimension > 1 ? "s" : "");
            }
            std::cout << "\n";
        }
        if (raw_solutions.empty()) {
            std::cout << "no finite-order solutions exist\n";
        } else {
            std::cout << "basis (" << raw_solutions.size() << " solution"
                      << (raw_solutions.size() > 1 ? "s" : "") << ", in the original variable):\n";
            for (size_t i = 0; i < raw_solutions.size(); ++i)
                std::cout << "  [" << i << "] " << raw_solutions[i].str() << "\n";
            std::cout << "independence rank: " << basis.independence.rank << "\n";
        }
    }
    return exit_ok;
}

int cmd_verify(const std::string& problem_path, const std::string& solution_path,
               const CommonFlags& flags) {
    ExpSum::set_default_merge_tolerance(flags.merge_tol);
    RawProblem raw = load_problem(problem_path);
    SolutionDocument sol = load_solution(solution_path);

    bool numeric = flags.mode == "numeric" || raw.has_approx();
    for (const ExpSum& c : sol.basis)
        numeric = numeric || c.has_approx();
    RawProblem work = numeric ? raw.to_approx() : raw;
    double scale = work.leading.max_coeff_magnitude();
    for (const ExpSum& a : work.coeffs)
        scale = std::max(scale, a.max_coeff_magnitude());

    json report = json::array();
    bool all_ok = true;
    for (size_t i = 0; i < sol.basis.size(); ++i) {
        ExpSum cand = numeric ? sol.basis[i].to_approx() : sol.basis[i];
        ExpSum r = residual(cand, work);
        ZeroCheck z = is_zero(r, flags.tol, scale);
        all_ok = all_ok && z.zero;
        json cert = {{"index", i},
                     {"verified", z.zero},
                     {"residual_magnitude", z.worst_magnitude}};
        if (!z.zero && z.worst_freq) {
            cert["worst_frequency"] = format_scalar(*z.worst_freq);
            cert["worst_zpower"] = z.worst_zpow;
        }
        report.push_back(cert);
        std::cout << "candidate " << i << ": " << (z.zero ? "verified" : "FAILED");
        if (!z.zero && z.worst_freq)
            std::cout << "  (residual term at frequency " << format_scalar(*z.worst_freq)
                      << ", z^" << z.worst_zpow << ", magnitude " << z.worst_magnitude << ")";
        std::cout << "\n";
    }
    IndependenceReport ind = independence(sol.basis);
    std::cout << "independence rank: " << ind.rank << " of " << sol.basis.size() << "\n";

    emit_json({{"candidates", report}, {"independence_rank", ind.rank}}, flags.json_path);
    return all_ok ? exit_ok : exit_verify_failed;
}

int cmd_indicial(const std::string& path, const CommonFlags& flags) {
    ExpSum::set_default_merge_tolerance(flags.merge_tol);
    NormalizedProblem np = normalize(load_problem(path));
    Poly ind = indicial_polynomial(np);
    RootSet roots = all_roots(ind, flags.solve_options().roots);
    std::vector<RootClass> classes = group_into_classes(roots, flags.class_tol);

    json coeffs = json::array();
    for (int k = 0; k <= ind.degree(); ++k)
        coeffs.push_back(format_scalar(ind.coeff(k)));
    emit_json({{"indicial", {{"variable", "x"}, {"coefficients", coeffs}}},
               {"normalization", normalization_to_json(np)},
               {"root_report", root_set_to_json(roots, classes)}},
              flags.json_path);

    if (flags.json_path != "-") {
        std::cout << "indicial polynomial: " << ind.str() << "\n";
        for (const Root& r : roots.roots)
            std::cout << "  root " << format_scalar(r.value) << "  multiplicity "
                      << r.multiplicity << "  " << (r.exact ? "exact" : "approx") << "\n";
        for (size_t c = 0; c < classes.size(); ++c)
            std::cout << "  class " << c << ": " << class_roots_text(classes[c]) << "\n";
    }
    return exit_ok;
}

int cmd_transform(const std::string& path, const CommonFlags& flags) {
    ExpSum::set_default_merge_tolerance(flags.merge_tol);
    NormalizedProblem np = normalize(load_problem(path));
    TDomainODE ode = to_t_domain(np);

    json alphas = json::array();
    for (const Poly& a : ode.alpha) {
        json c = json::array();
        for (int k = 0; k <= std::max(a.degree(), 0); ++k)
            c.push_back(format_scalar(a.coeff(k)));
        alphas.push_back(c);
    }
    emit_json({{"alpha", alphas}, {"normalization", normalization_to_json(np)}},
              flags.json_path);

    if (flags.json_path != "-") {
        std::cout << "equation sum_i alpha_i(t) t^i v^(i) = 0 with\n";
        for (size_t i = 0; i < ode.alpha.size(); ++i)
            std::cout << "  alpha_" << i << " = " << ode.alpha[i].str() << "\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-order solutions of linear ODEs with exponential-sum coefficients"};
    app.require_subcommand(1);

    CommonFlags solve_flags, verify_flags, indicial_flags, transform_flags;
    std::string solve_path, verify_problem, verify_solution, indicial_path, transform_path;

    CLI::App* solve = app.add_subcommand("solve", "construct the finite-order solution basis");
    solve->add_option("problem", solve_path, "problem document (JSON)")->required();
    add_common_flags(solve, solve_flags, true);

    CLI::App* verify = app.add_subcommand("verify", "verify candidate solutions by substitution");
    verify->add_option("problem", verify_problem, "problem document (JSON)")->required();
    verify->add_option("solution", verify_solution, "solution document (JSON)")->required();
    add_common_flags(verify, verify_flags, false);

    CLI::App* indicial = app.add_subcommand("indicial", "indicial polynomial, roots and classes");
    indicial->add_option("problem", indicial_path, "problem document (JSON)")->required();
    add_common_flags(indicial, indicial_flags, true);

    CLI::App* transform = app.add_subcommand("transform", "coefficients of the t-domain equation");
    transform->add_option("problem", transform_path, "problem document (JSON)")->required();
    add_common_flags(transform, transform_flags, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_parse;
    }

    try {
        if (solve->parsed())
            return cmd_solve(solve_path, solve_flags);
        if (verify->parsed())
            return cmd_verify(verify_problem, verify_solution, verify_flags);
        if (indicial->parsed())
            return cmd_indicial(indicial_path, indicial_flags);
        if (transform->parsed())
            return cmd_transform(transform_path, transform_flags);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const unsupported_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return exit_unsupported;
    } catch (const cap_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return exit_cap;
    } catch (const mode_error& e) {
        std::cerr << "mode error: " << e.what() << "\n";
        return exit_parse;
    } catch (const numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return exit_numeric;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    }
    return exit_ok;
}
