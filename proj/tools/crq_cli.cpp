// crq: command-line front end for block-rigid CRQ-groups of ring type and
// their multiplication groups.
//
// Exit status: 0 computed and true, 1 computed and false, 2 bad input.

#include "crq/elements.hpp"
#include "crq/group.hpp"
#include "crq/io.hpp"
#include "crq/multgroup.hpp"
#include "crq/tables.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using crq::io::json;

enum class Format { Text, Json };

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string spec_path;
    std::string table_path;
    std::string b_path;
    std::string format = "text";
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::string gamma = "1";
    std::string s1, s2, m;
    unsigned k = 1;
    crq::GenerationBounds bounds;
    std::size_t samples = 24;
};

struct Outcome {
    int status = 0;
    json report;
    std::string text;
};

/// Input error: exit 2 with the message.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string input_path(const RunConfig& cfg, const std::string& flag_value, std::size_t position, const char* what)
{
    if (!flag_value.empty()) return flag_value;
    if (position < cfg.inputs.size()) return cfg.inputs[position];
    throw InputError(std::string("missing ") + what + " path");
}

crq::GroupSpec load_spec(const RunConfig& cfg)
{
    return crq::io::spec_from_json(crq::io::read_json_file(input_path(cfg, cfg.spec_path, 0, "spec")));
}

crq::GroupSpec load_valid_spec(const RunConfig& cfg)
{
    auto spec = load_spec(cfg);
    if (auto v = crq::validate_spec(spec); !v.empty()) {
        throw InputError("spec is not a valid group: " + crq::to_string(v.front().code) + " (" + v.front().message + ")");
    }
    return spec;
}

crq::MultTable load_table(const RunConfig& cfg, const crq::GroupSpec& spec)
{
    auto table = crq::io::table_from_json(crq::io::read_json_file(input_path(cfg, cfg.table_path, 1, "table")));
    crq::check_table_shape(spec, table);
    return table;
}

crq::Integer parse_integer(const std::string& s, const char* flag)
{
    try {
        return crq::io::integer_from_json(json(s), flag);
    } catch (const crq::io::SchemaError&) {
        throw InputError(std::string(flag) + ": expected an integer, got '" + s + "'");
    }
}

std::string join(const std::vector<std::string>& xs)
{
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
    return out.empty() ? "(none)" : out;
}

Outcome run_validate(const RunConfig& cfg)
{
    const auto spec = load_spec(cfg);
    const auto violations = crq::validate_spec(spec);
    Outcome out;
    out.status = violations.empty() ? 0 : 1;
    out.report = {{"valid", violations.empty()}, {"violations", crq::io::violations_to_json(violations)}};
    std::ostringstream os;
    if (violations.empty()) {
        os << "valid: " << spec.types.size() << " critical types, n = " << crq::regulator_index(spec) << "\n";
    } else {
        os << "invalid:\n";
        for (const auto& v : violations) os << "  " << crq::to_string(v.code) << ": " << v.message << "\n";
    }
    out.text = os.str();
    return out;
}

Outcome run_describe(const RunConfig& cfg)
{
    const auto spec = load_valid_spec(cfg);
    const auto dec = crq::main_decomposition(spec);
    const auto d = crq::element_d(spec);
    Outcome out;
    out.report = {{"spec", crq::io::spec_to_json(spec)},
                  {"regulator_index", crq::io::integer_to_json(crq::regulator_index(spec))},
                  {"clipped_types", spec.clipped_types()},
                  {"decomposition", crq::io::decomposition_to_json(dec)},
                  {"d", crq::io::element_to_json(d)},
                  {"order_of_d", crq::io::integer_to_json(crq::order_mod_A(spec, d))}};
    std::ostringstream os;
    os << "regulator index n = " << crq::regulator_index(spec) << "\n";
    os << "T0 = {" << join(spec.clipped_types()) << "}\n";
    os << "d = " << crq::io::element_to_json(d).dump() << "\n";
    os << "main decomposition: clipped {" << join(dec.clipped) << "}, complement ranks";
    for (const auto& [type, k] : dec.complement) os << " " << type << ":" << k;
    os << "\n";
    for (const auto& t : spec.types) {
        os << "  " << t.id() << ": P_inf = {";
        std::string primes;
        for (auto p : t.type.inf_primes.primes()) primes += (primes.empty() ? "" : ",") + std::to_string(p);
        os << primes << "}, rank " << t.rank << ", m = " << t.m << ", s = " << t.s << "\n";
    }
    out.text = os.str();
    return out;
}

std::string describe_descriptor(const crq::MultGroupDescriptor& desc)
{
    std::ostringstream os;
    os << "Mult G: n = " << crq::regulator_index(desc.spec) << ", T0 = {" << join(desc.spec.clipped_types()) << "}\n";
    for (std::size_t i = 0; i < desc.spec.types.size(); ++i) {
        const auto& t = desc.spec.types[i];
        os << "  " << t.id() << ": rank " << t.rank << ", m = " << t.m;
        if (t.clipped()) os << ", s' = " << t.s << ", X coefficient " << crq::Rational(t.s, t.m).str() << " on E_0";
        os << "\n";
    }
    for (const auto& b : desc.regulator) {
        os << "  regulator block " << b.type << ": corner " << b.corner_clipped << "+" << b.corner_free
           << " (scale " << b.corner_scale << "), border " << b.border << " (scale " << b.border_scale
           << "), interior " << b.interior << ", total " << b.total() << "\n";
    }
    os << "  main decomposition: clipped {" << join(desc.decomposition.clipped) << "}, complement ranks";
    for (const auto& [type, k] : desc.decomposition.complement) os << " " << type << ":" << k;
    os << "\n";
    return os.str();
}

Outcome run_mult(const RunConfig& cfg)
{
    const auto desc = crq::compute_mult_group(load_valid_spec(cfg));
    return {0, crq::io::descriptor_to_json(desc), describe_descriptor(desc)};
}

Outcome run_iterate(const RunConfig& cfg)
{
    if (cfg.k < 1) throw InputError("--k must be at least 1");
    const auto spec = load_valid_spec(cfg);
    try {
        const auto desc = crq::iterate_mult(spec, cfg.k);
        json report = crq::io::descriptor_to_json(desc);
        report["k"] = cfg.k;
        return {0, report, "after " + std::to_string(cfg.k) + " applications of Mult\n" + describe_descriptor(desc)};
    } catch (const crq::ResourceError& e) {
        throw InputError(e.what());
    }
}

Outcome run_check_table(const RunConfig& cfg)
{
    const auto spec = load_valid_spec(cfg);
    const auto table = load_table(cfg, spec);
    if (auto bad = crq::entries_outside_A(spec, table); !bad.empty()) {
        throw InputError("table entry (" + std::to_string(bad.front().row) + "," + std::to_string(bad.front().col) +
                         ") of type '" + bad.front().type + "' is not in A_tau");
    }
    const auto verdict = crq::decide_membership(spec, table);
    Outcome out;
    out.status = verdict.member ? 0 : 1;
    out.report = crq::io::verdict_to_json(verdict);
    std::ostringstream os;
    if (verdict.member) {
        os << "member: alpha = " << verdict.alpha->residue << " (mod " << verdict.alpha->modulus << ")\n";
    } else {
        const auto& f = *verdict.failure;
        os << "not a member: " << crq::to_string(f.kind);
        if (!f.type.empty()) os << " at type " << f.type << " entry (" << f.row << "," << f.col << ")";
        os << ": " << f.detail << "\n";
    }
    out.text = os.str();
    return out;
}

Outcome run_oracle(const RunConfig& cfg)
{
    const auto spec = load_valid_spec(cfg);
    const auto table = load_table(cfg, spec);
    const auto result = crq::closure_analysis(spec, table);
    Outcome out;
    out.status = result.closes ? 0 : 1;
    out.report = crq::io::closure_to_json(result);
    out.report["border_products_in_mA"] = result.closes ? json(crq::remark23_check(spec, table)) : json(nullptr);
    if (result.closes) {
        out.text = "closed: G is a subring, d x d in " + result.square_coefficient->get_str() + " d + A\n";
    } else {
        out.text = "not closed: " + result.failure + "\n";
    }
    return out;
}

Outcome run_purity(const RunConfig& cfg)
{
    const auto spec = load_spec(cfg);
    if (auto v = crq::validate_shape(spec); !v.empty()) {
        throw InputError("malformed candidate: " + crq::to_string(v.front().code) + " (" + v.front().message + ")");
    }
    std::map<std::string, crq::Integer> ms;
    for (const auto& t : spec.types) ms[t.id()] = t.m;
    const bool condition_m = crq::condition_m_check(ms);
    json per_type = json::object();
    bool all_pure = true;
    std::ostringstream os;
    for (const auto& t : spec.types) {
        const bool pure = crq::purity_oracle(spec, t.id());
        all_pure = all_pure && pure;
        per_type[t.id()] = pure;
        os << "  A_" << t.id() << (pure ? " is pure" : " is not pure") << " in G\n";
    }
    Outcome out;
    out.status = all_pure ? 0 : 1;
    out.report = {{"condition_m", condition_m}, {"pure", per_type}, {"all_pure", all_pure},
                  {"equivalence_holds", condition_m == all_pure}};
    out.text = std::string("condition (m): ") + (condition_m ? "holds" : "fails") + "\n" + os.str();
    return out;
}

Outcome run_coset(const RunConfig& cfg)
{
    const auto spec = load_valid_spec(cfg);
    const auto gamma = parse_integer(cfg.gamma, "--gamma");
    crq::AmbientElement b;
    if (!cfg.b_path.empty()) b = crq::io::element_from_json(crq::io::read_json_file(cfg.b_path));
    const auto report = crq::coset_relation(spec, gamma, b, cfg.seed, cfg.samples);
    Outcome out;
    out.status = report.applicable && !report.confirmed() ? 1 : 0;
    out.report = crq::io::coset_report_to_json(report);
    std::ostringstream os;
    os << "gamma = " << gamma << " (coprime to n), gamma^-1 = " << report.gamma_inverse << " mod n\n";
    if (!report.applicable) {
        os << "not applicable: " << report.reason << "\n";
    } else {
        os << "X1 - gamma^-1 X2 in M2: " << (report.witness_in_M2 ? "yes" : "NO") << "\n";
        os << "verdicts agree on " << report.samples.size() << " sampled tables: "
           << (report.verdicts_agree ? "yes" : "NO") << "\n";
    }
    out.text = os.str();
    return out;
}

const char* yes_no(bool b)
{
    return b ? "yes" : "no";
}

Outcome run_example27(const RunConfig& cfg)
{
    if (cfg.s1.empty() || cfg.s2.empty() || cfg.m.empty()) throw InputError("example27 needs --s1, --s2 and --m");
    const auto report = crq::example_2_7(parse_integer(cfg.s1, "--s1"), parse_integer(cfg.s2, "--s2"),
                                         parse_integer(cfg.m, "--m"));
    Outcome out;
    out.status = report.confirmed ? 0 : 1;
    out.report = crq::io::example_report_to_json(report);
    std::ostringstream os;
    os << "s1 = " << report.s1 << ", s2 = " << report.s2 << ", m = " << report.m << "\n";
    os << "F_0 = {(s1+m) e1, (s2+m) e2} is a B-basis: " << (report.f_basis_valid ? "yes" : "NO") << "\n";
    for (const auto& r : report.from_E) {
        os << "  alpha = " << r.alpha << ": member w.r.t. E_0 " << yes_no(r.member_E) << ", w.r.t. F_0 "
           << yes_no(r.member_F) << "\n";
    }
    for (const auto& r : report.from_F) {
        os << "  beta = " << r.alpha << ": member w.r.t. F_0 " << yes_no(r.member_F) << ", w.r.t. E_0 "
           << yes_no(r.member_E) << "\n";
    }
    os << "intersection = M⁽²⁾: " << (report.confirmed ? "confirmed" : "NOT confirmed") << "\n";
    out.text = os.str();
    return out;
}

Outcome run_gen(const RunConfig& cfg)
{
    crq::GroupSpec spec;
    try {
        spec = crq::random_spec(cfg.seed, cfg.bounds);
    } catch (const crq::GenerationError& e) {
        throw InputError(e.what());
    }
    const json spec_json = crq::io::spec_to_json(spec);
    json bounds = {{"max_types", cfg.bounds.max_types},
                   {"max_rank", cfg.bounds.max_rank},
                   {"max_m", cfg.bounds.max_m},
                   {"prime_pool", cfg.bounds.prime_pool}};
    return {0, {{"bounds", bounds}, {"spec", spec_json}}, crq::io::canonical(spec_json)};
}

Outcome dispatch(const RunConfig& cfg)
{
    if (cfg.command == "validate") return run_validate(cfg);
    if (cfg.command == "describe") return run_describe(cfg);
    if (cfg.command == "mult") return run_mult(cfg);
    if (cfg.command == "iterate") return run_iterate(cfg);
    if (cfg.command == "check-table") return run_check_table(cfg);
    if (cfg.command == "oracle") return run_oracle(cfg);
    if (cfg.command == "purity") return run_purity(cfg);
    if (cfg.command == "coset") return run_coset(cfg);
    if (cfg.command == "example27") return run_example27(cfg);
    if (cfg.command == "gen") return run_gen(cfg);
    throw InputError("unknown command '" + cfg.command + "'");
}

json header(const RunConfig& cfg)
{
    json h = {{"command", cfg.command}};
    if (cfg.seed_given || cfg.command == "gen" || cfg.command == "coset") h["seed"] = cfg.seed;
    return h;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multiplication groups of block-rigid CRQ-groups of ring type"};
    app.require_subcommand(1, 1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("inputs", cfg.inputs, "spec file, then table file where needed");
        sub->add_option("--spec", cfg.spec_path, "group spec (JSON)");
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "structured"}));
        sub->add_option("--seed", cfg.seed, "random seed");
    };

    struct Command {
        const char* name;
        const char* help;
    };
    const Command commands[] = {
        {"validate", "check a spec against the class rules"},
        {"describe", "regulator index, main decomposition and standard representation"},
        {"mult", "structure of Mult G"},
        {"iterate", "apply Mult k times"},
        {"check-table", "decide whether a table defines a multiplication"},
        {"oracle", "direct subring closure test of a table"},
        {"purity", "purity of each A_tau in G against condition (m)"},
        {"coset", "change of generator d1 = gamma d + b"},
        {"example27", "cross-basis counterexample"},
        {"gen", "random valid spec"},
    };
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        add_common(sub);
        const std::string name = c.name;
        if (name == "check-table" || name == "oracle") sub->add_option("--table", cfg.table_path, "table file (JSON)");
        if (name == "iterate") sub->add_option("--k", cfg.k, "iteration depth")->required();
        if (name == "coset") {
            sub->add_option("--gamma", cfg.gamma, "integer coprime to n");
            sub->add_option("--b", cfg.b_path, "element of B (JSON element literal)");
            sub->add_option("--samples", cfg.samples, "number of sampled tables");
        }
        if (name == "example27") {
            sub->add_option("--s1", cfg.s1, "s1 > 1");
            sub->add_option("--s2", cfg.s2, "s2 > 1");
            sub->add_option("--m", cfg.m, "prime m");
        }
        if (name == "gen") {
            sub->add_option("--max-types", cfg.bounds.max_types, "maximum number of types");
            sub->add_option("--max-rank", cfg.bounds.max_rank, "maximum rank per type");
            sub->add_option("--max-m", cfg.bounds.max_m, "maximum invariant m");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (auto* sub : app.get_subcommands()) {
        cfg.command = sub->get_name();
        cfg.seed_given = sub->count("--seed") > 0;
    }
    const Format format = cfg.format == "text" ? Format::Text : Format::Json;

    json report = header(cfg);
    int status = 0;
    std::string text;
    try {
        Outcome outcome = dispatch(cfg);
        status = outcome.status;
        report["status"] = status == 0 ? "ok" : "false";
        report["result"] = std::move(outcome.report);
        text = std::move(outcome.text);
    } catch (const std::exception& e) {
        // Schema, domain and input errors all end up here.
        status = 2;
        report["status"] = "error";
        report["error"] = e.what();
        text = std::string("error: ") + e.what() + "\n";
        if (format == Format::Json) std::cerr << "crq " << cfg.command << ": " << e.what() << "\n";
    }

    if (format == Format::Json) {
        std::cout << crq::io::canonical(report);
    } else {
        std::cout << text;
    }
    return status;
}
