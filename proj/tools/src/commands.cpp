#include "fls/cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fls/error.hpp"
#include "fls/frobenius.hpp"

namespace fls::cli {

double default_tolerance() {
    if (const char* env = std::getenv("FLS_TOLERANCE")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0) return v;
    }
    return 1e-6;
}

std::string version() { return FLS_VERSION; }

namespace {

std::string joined(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
    return out;
}

EnumerationLimits limits_of(const JobSpec& job) { return {job.max_system_size, job.max_items}; }

FdOptions fd_of(const JobSpec& job) { return {job.h, job.richardson}; }

CriticalOptions critical_of(const JobSpec& job) {
    CriticalOptions o;
    o.allow_k_ge_2 = job.allow_k_ge_2;
    return o;
}

Json matroid_rank(const Json& in) {
    const MatroidPtr m = parse_matroid(field(in, "matroid"));
    const Subset a = in.contains("A") ? parse_subset(in["A"], m->ground().size()) : m->ground_subset();
    return {{"A", subset_json(a)}, {"rank", m->rank(a)}, {"max_independent_subset", subset_json(m->max_independent_subset(a))}};
}

Json matroid_bases(const Json& in) {
    const MatroidPtr m = parse_matroid(field(in, "matroid"));
    Json bases = Json::array();
    for (Subset b : m->bases()) bases.push_back(subset_json(b));
    return {{"rank", m->rank()}, {"bases", bases}};
}

Json partition(const Json& in) {
    const PartitionProblem p = parse_partition_problem(in);
    const auto r = solve_partition(p);
    if (const auto* cert = std::get_if<PartitionCertificate>(&r)) {
        Json parts = Json::array();
        for (Subset s : cert->parts) parts.push_back(subset_json(s));
        return {{"certificate", parts}};
    }
    const auto& w = std::get<DeficiencyWitness>(r);
    return {{"witness", {{"A", subset_json(w.set)}, {"size", w.size}, {"bound", w.bound}}}};
}

Json amin(const Json& in) {
    if (in.contains("T")) {
        const SystemContext ctx(parse_matroid(field(in, "matroid")), field(in, "m").get<int>());
        const System t = parse_system(in["T"]);
        const int l = in.contains("l") ? in["l"].get<int>() : t.size() - ctx.m() * ctx.k();
        Json family = Json::array();
        for (Subset b : tight_family(ctx, t, l)) family.push_back(subset_json(b));
        Json out = {{"l", l}, {"tight_family", family}, {"a_min", subset_json(a_min_system(ctx, t, l))}};
        if (l >= 1) {
            out["a_dec"] = subset_json(a_dec(ctx, t, l));
            out["equal"] = out["a_dec"] == out["a_min"];
        }
        return out;
    }
    const PartitionProblem p = parse_partition_problem(in);
    Json family = Json::array();
    for (Subset b : g_family(p)) family.push_back(subset_json(b));
    Json out = {{"G", family}, {"a_min", subset_json(a_min(p))}, {"l", trailing_uniform_rank(p)}};
    if (trailing_uniform_rank(p) >= 1) {
        out["a_par"] = subset_json(a_par(p));
        out["equal"] = out["a_par"] == out["a_min"];
    }
    return out;
}

Json equivalence(const JobSpec& job, const Json& in) {
    const SystemContext ctx(parse_matroid(field(in, "matroid")), field(in, "m").get<int>());
    const System t = parse_system(field(in, "T"));
    const MatchMode mode = job.strict_order ? MatchMode::strict_order : MatchMode::unordered;
    const auto report = equivalence_report(ctx, t, mode, limits_of(job));
    Json nodes = Json::array();
    for (std::size_t i = 0; i < report.nodes.size(); ++i) {
        const auto& g = report.nodes[i];
        nodes.push_back({{"T1", system_json(g.t1)},
                         {"T2", system_json(g.t2)},
                         {"witness", strong_decomposition_json(g.witness)},
                         {"component", report.component[i]}});
    }
    Json edges = Json::array();
    for (const auto& [a, b] : report.edges) edges.push_back({a, b});
    return {{"mode", job.strict_order ? "strict_order" : "unordered"},
            {"nodes", nodes},
            {"edges", edges},
            {"components", report.component_count}};
}

Json strong_decompose(const JobSpec& job, const Json& in) {
    const SystemContext ctx(parse_matroid(field(in, "matroid")), field(in, "m").get<int>());
    const System t = parse_system(field(in, "T"));
    const int l = in.contains("l") ? in["l"].get<int>() : t.size() - ctx.m() * ctx.k();
    const auto r = try_strong_decomposition(ctx, t, l);
    Json out = {{"l", l}};
    if (const auto* dec = std::get_if<StrongDecomposition>(&r)) {
        out["strong"] = true;
        out["decomposition"] = strong_decomposition_json(*dec);
        if (job.all) {
            Json all = Json::array();
            for (const auto& d : enumerate_strong_decompositions(ctx, t, l, limits_of(job)))
                all.push_back(strong_decomposition_json(d));
            out["decompositions"] = all;
        }
    } else {
        const auto& ob = std::get<RankObstruction>(r);
        out["strong"] = false;
        out["obstruction"] = {{"B", subset_json(ob.set)}, {"mass", ob.mass}, {"bound", ob.bound}};
    }
    return out;
}

std::shared_ptr<ArrangementStructure> arrangement_structure(const JobSpec& job, const Json& in) {
    const int m = in.contains("m") ? in["m"].get<int>() : 2;
    return structure_from_arrangement(parse_arrangement(in), m, critical_of(job));
}

std::vector<Point> samples_of(const JobSpec& job, const FlatFrameStructure& s) {
    return polydisc_samples(s.basepoint(), job.radius * (1.0 + sup_norm(s.basepoint())), job.samples);
}

Json potentials(const JobSpec& job, const Json& in) {
    const auto s = arrangement_structure(job, in);
    PotentialOptions opt;
    opt.fd = fd_of(job);
    opt.tolerance = job.tolerance;
    opt.limits = limits_of(job);
    const int n_max = job.n_max > 0 ? job.n_max : s->m() * s->k() + 3;
    const auto samples = samples_of(job, *s);

    const Polynomial q = build_first_kind(*s, opt);
    Json qj = Json::object();
    for (const auto& [t, c] : q.terms()) qj[system_key(t)] = complex_json(c);

    const auto l = build_second_kind(*s, n_max, opt);
    Json lj = Json::object(), prov = Json::object();
    for (const auto& [t, c] : l.series.terms()) lj[system_key(t)] = complex_json(c);
    for (const auto& [t, p] : l.provenance)
        prov[system_key(t)] = {{"candidates", p.candidates}, {"spread", p.spread}, {"first_T2", system_json(p.first_t2)}};

    return {{"N_max", n_max},
            {"Q", qj},
            {"L", lj},
            {"provenance", prov},
            {"spread_max", l.spread_max},
            {"first_kind_defect", first_kind_defect(*s, q, samples)},
            {"second_kind_defect", second_kind_defect(*s, l.series, s->basepoint())}};
}

Json verify_arrangement(const JobSpec& job, const Json& in) {
    const auto s = arrangement_structure(job, in);
    const auto samples = samples_of(job, *s);
    VerifyOptions opt;
    opt.fd = fd_of(job);
    opt.hard_threshold = job.threshold;
    opt.throw_on_violation = false;
    const AxiomReport r = verify_axioms(*s, samples, opt);
    const ArrangementDiagnostics d = diagnose(*s, samples);

    Json bases = Json::array();
    for (Subset b : s->matroid().bases()) bases.push_back(subset_json(b));
    Json points = Json::array();
    const auto frame = s->frame(s->basepoint());
    for (const auto& t : frame.points) points.push_back(vector_json(t));
    Json pairings = Json::object();
    for (const System& t : systems_of_size(s->n(), s->m() * s->k()))
        pairings[system_key(t)] = complex_json(unit_pairing(*s, t, s->basepoint()));

    Json out = {
        {"mu", s->mu()},
        {"bases", bases},
        {"critical_points", points},
        {"axioms",
         {{"commutativity", r.commutativity},
          {"integrability", r.integrability},
          {"higgs_invariance", r.higgs_invariance},
          {"section_flatness", r.section_flatness},
          {"form_flatness", r.form_flatness},
          {"max", r.max()},
          {"samples", r.samples},
          {"threshold", job.threshold},
          {"valid", r.max() <= job.threshold}}},
        {"diagnostics",
         {{"linear_relation", d.linear_relation},
          {"symmetry", d.symmetry},
          {"multiplication_invariance", d.multiplication_invariance},
          {"generation_rank", d.generation_rank},
          {"generation_condition", d.generation_condition},
          {"period_rank", d.period_rank},
          {"period_kernel_residual", d.period_kernel_residual},
          {"form_condition", d.form_condition},
          {"min_hessian_det", d.min_hessian_det},
          {"max_critical_residual", d.max_critical_residual}}},
        {"fixture_values", {{"S(zeta,zeta)", complex_json(unit_pairing(*s, System(s->n()), s->basepoint()))},
                            {"S(C_T zeta,zeta)", pairings}}},
    };
    if (r.max() > job.threshold) out["error"] = {{"code", to_string(ErrorCode::structure_invalid)}};
    return out;
}

}  // namespace

Json execute(const JobSpec& job, const Json& input) {
    const std::string cmd = joined(job.command);
    if (cmd == "matroid rank") return matroid_rank(input);
    if (cmd == "matroid bases") return matroid_bases(input);
    if (cmd == "partition") return partition(input);
    if (cmd == "amin") return amin(input);
    if (cmd == "equivalence") return equivalence(job, input);
    if (cmd == "strong-decompose") return strong_decompose(job, input);
    if (cmd == "potentials") return potentials(job, input);
    if (cmd == "verify-arrangement") return verify_arrangement(job, input);
    fail(ErrorCode::domain, "unknown command '" + cmd + "'");
}

int run(const JobSpec& job, std::istream& in, std::ostream& out) {
    Json envelope = {{"version", version()}, {"command", joined(job.command)}};
    int code = 0;
    try {
        Json input;
        try {
            input = Json::parse(in);
        } catch (const Json::parse_error& e) {
            fail(ErrorCode::schema, std::string("input is not valid JSON: ") + e.what());
        }
        try {
            envelope["result"] = execute(job, input);
        } catch (const Json::type_error& e) {
            fail(ErrorCode::schema, std::string("unexpected JSON type: ") + e.what());
        }
    } catch (const Error& e) {
        code = e.code() == ErrorCode::internal ? 1 : 2;
        envelope["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    } catch (const std::exception& e) {
        code = 1;
        envelope["error"] = {{"code", to_string(ErrorCode::internal)}, {"message", e.what()}};
    }
    out << emit(envelope);
    return code;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Matroid partitions, system decompositions and potentials of Frobenius like structures"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    JobSpec job;
    job.tolerance = default_tolerance();
    const auto add_io = [&](CLI::App* sub) {
        sub->add_option("-i,--input", job.input, "input JSON file (default stdin)");
        sub->add_option("-o,--output", job.output, "output file (default stdout)");
    };
    const auto add_limits = [&](CLI::App* sub) {
        sub->add_option("--max-system-size", job.max_system_size, "largest |T| accepted by enumerations")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-items", job.max_items, "largest enumeration result")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    };
    const auto add_numeric = [&](CLI::App* sub) {
        sub->add_option("--step", job.h, "finite-difference base step")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_flag("!--no-richardson", job.richardson, "disable two-step Richardson extrapolation");
        sub->add_option("--samples", job.samples, "sample points around x")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--radius", job.radius, "sample radius relative to 1+|x|")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_flag("--allow-k-ge-2", job.allow_k_ge_2, "enable the experimental k >= 2 critical point solver");
    };

    auto* matroid = app.add_subcommand("matroid", "matroid queries");
    matroid->require_subcommand(1);
    auto* rank = matroid->add_subcommand("rank", "rank and greedy maximal independent subset of A");
    auto* bases = matroid->add_subcommand("bases", "all maximal independent sets");
    auto* part = app.add_subcommand("partition", "matroid partition certificate or deficiency witness");
    auto* amin_cmd = app.add_subcommand("amin", "minimal tight set of a partition problem or a strong system");
    auto* equiv = app.add_subcommand("equivalence", "classes of good decompositions of a system");
    auto* strong = app.add_subcommand("strong-decompose", "strong decomposition or rank obstruction");
    auto* pots = app.add_subcommand("potentials", "potentials of both kinds for an arrangement");
    auto* verify = app.add_subcommand("verify-arrangement", "axiom residuals and diagnostics for an arrangement");

    for (auto* sub : {rank, bases, part, amin_cmd, equiv, strong, pots, verify}) add_io(sub);
    for (auto* sub : {equiv, strong, pots}) add_limits(sub);
    for (auto* sub : {pots, verify}) add_numeric(sub);
    equiv->add_flag("--strict-order", job.strict_order, "match base parts index by index");
    strong->add_flag("--all", job.all, "list every strong decomposition");
    pots->add_option("--tol", job.tolerance, "coefficient spread tolerance (env FLS_TOLERANCE)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    pots->add_option("--n-max", job.n_max, "truncation order of L (default mk+3)")->check(CLI::PositiveNumber);
    verify->add_option("--threshold", job.threshold, "largest accepted axiom residual")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    for (CLI::App* sub = &app; !sub->get_subcommands().empty();) {
        sub = sub->get_subcommands().front();
        job.command.push_back(sub->get_name());
    }

    std::ifstream fin;
    std::istream* in = &std::cin;
    if (!job.input.empty() && job.input != "-") {
        fin.open(job.input);
        if (!fin) {
            std::cerr << "cannot open " << job.input << "\n";
            return 2;
        }
        in = &fin;
    }
    if (job.output.empty() || job.output == "-") return run(job, *in, std::cout);
    std::ostringstream buffer;
    const int code = run(job, *in, buffer);
    std::ofstream fout(job.output);
    if (!fout) {
        std::cerr << "cannot write " << job.output << "\n";
        return 1;
    }
    fout << buffer.str();
    return code;
}

}  // namespace fls::cli
