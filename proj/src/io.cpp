#include "crq/io.hpp"

#include <fstream>
#include <limits>
#include <regex>
#include <set>
#include <sstream>

namespace crq::io {

namespace {

void require_keys(const json& j, const std::set<std::string>& required, const std::set<std::string>& optional,
                  const std::string& where)
{
    if (!j.is_object()) throw SchemaError(where + ": expected an object");
    for (const auto& key : required) {
        if (!j.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
    }
    for (const auto& [key, value] : j.items()) {
        if (!required.contains(key) && !optional.contains(key)) {
            throw SchemaError(where + ": unknown field '" + key + "'");
        }
    }
}

Rational rational_from_json(const json& j, const std::string& where)
{
    if (!j.is_string()) throw SchemaError(where + ": expected a rational literal string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const DomainError& e) {
        throw SchemaError(where + ": " + e.what());
    }
}

Coords coords_from_json(const json& j, const std::string& where)
{
    if (!j.is_array()) throw SchemaError(where + ": expected an array of rational literals");
    Coords out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

json coords_to_json(const Coords& coords)
{
    json arr = json::array();
    for (const auto& c : coords) arr.push_back(c.str());
    return arr;
}

std::uint64_t uint_from_json(const json& j, const std::string& where)
{
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
    throw SchemaError(where + ": expected a nonnegative integer");
}

json congruence_to_json(const Congruence& c)
{
    return {{"residue", integer_to_json(c.residue)}, {"modulus", integer_to_json(c.modulus)}};
}

}  // namespace

json integer_to_json(const Integer& x)
{
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

Integer integer_from_json(const json& j, const std::string& where)
{
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()), 10);
    if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()), 10);
    if (j.is_string()) {
        static const std::regex pattern("^-?[0-9]+$");
        const auto s = j.get<std::string>();
        if (!std::regex_match(s, pattern)) throw SchemaError(where + ": malformed integer string '" + s + "'");
        return Integer(s, 10);
    }
    throw SchemaError(where + ": expected an integer");
}

json spec_to_json(const GroupSpec& spec)
{
    GroupSpec sorted = spec;
    sorted.canonicalize();
    json types = json::array();
    for (const auto& t : sorted.types) {
        json primes = json::array();
        for (auto p : t.type.inf_primes.primes()) primes.push_back(p);
        types.push_back({{"id", t.id()},
                         {"inf_primes", primes},
                         {"rank", t.rank},
                         {"m", integer_to_json(t.m)},
                         {"s", integer_to_json(t.s)}});
    }
    return {{"types", types}};
}

GroupSpec spec_from_json(const json& j)
{
    require_keys(j, {"types"}, {}, "spec");
    if (!j["types"].is_array()) throw SchemaError("spec.types: expected an array");
    GroupSpec spec;
    for (std::size_t i = 0; i < j["types"].size(); ++i) {
        const auto& e = j["types"][i];
        const std::string where = "spec.types[" + std::to_string(i) + "]";
        require_keys(e, {"id", "inf_primes", "rank", "m"}, {"s"}, where);
        if (!e["id"].is_string() || e["id"].get<std::string>().empty()) {
            throw SchemaError(where + ".id: expected a nonempty string");
        }
        if (!e["inf_primes"].is_array()) throw SchemaError(where + ".inf_primes: expected an array");
        std::vector<std::uint64_t> primes;
        for (const auto& p : e["inf_primes"]) primes.push_back(uint_from_json(p, where + ".inf_primes"));
        CriticalTypeData t;
        try {
            t.type = IdempotentType{e["id"].get<std::string>(), PrimeSet(primes)};
        } catch (const DomainError& err) {
            throw SchemaError(where + ".inf_primes: " + err.what());
        }
        t.rank = uint_from_json(e["rank"], where + ".rank");
        t.m = integer_from_json(e["m"], where + ".m");
        if (t.m < 1) throw SchemaError(where + ".m: must be positive");
        t.s = e.contains("s") ? integer_from_json(e["s"], where + ".s") : Integer(1);
        if (t.m == 1 && t.s != 1) throw SchemaError(where + ".s: must be 1 when m = 1");
        spec.types.push_back(std::move(t));
    }
    spec.canonicalize();
    return spec;
}

json element_to_json(const AmbientElement& g)
{
    json out = json::object();
    for (const auto& [type, coords] : g.blocks()) out[type] = coords_to_json(coords);
    return out;
}

AmbientElement element_from_json(const json& j)
{
    if (!j.is_object()) throw SchemaError("element: expected an object of type-id -> coordinates");
    std::map<std::string, Coords> blocks;
    for (const auto& [type, coords] : j.items()) blocks[type] = coords_from_json(coords, "element." + type);
    return AmbientElement(std::move(blocks));
}

json table_to_json(const MultTable& table)
{
    json out = json::object();
    for (const auto& [type, block] : table.blocks()) {
        json rows = json::array();
        for (std::size_t i = 0; i < block.rank(); ++i) {
            json row = json::array();
            for (std::size_t jj = 0; jj < block.rank(); ++jj) row.push_back(coords_to_json(block.at(i, jj)));
            rows.push_back(std::move(row));
        }
        out[type] = std::move(rows);
    }
    return out;
}

MultTable table_from_json(const json& j)
{
    if (!j.is_object()) throw SchemaError("table: expected an object of type-id -> matrix");
    MultTable table;
    for (const auto& [type, rows] : j.items()) {
        const std::string where = "table." + type;
        if (!rows.is_array()) throw SchemaError(where + ": expected a square matrix");
        const std::size_t rank = rows.size();
        TableBlock block(rank);
        for (std::size_t i = 0; i < rank; ++i) {
            if (!rows[i].is_array() || rows[i].size() != rank) {
                throw SchemaError(where + ": row " + std::to_string(i) + " must have " + std::to_string(rank) +
                                  " entries");
            }
            for (std::size_t jj = 0; jj < rank; ++jj) {
                auto c = coords_from_json(rows[i][jj], where + "[" + std::to_string(i) + "][" + std::to_string(jj) + "]");
                if (c.size() != rank) {
                    throw SchemaError(where + ": entry (" + std::to_string(i) + "," + std::to_string(jj) + ") must have " +
                                      std::to_string(rank) + " coordinates");
                }
                block.at(i, jj) = std::move(c);
            }
        }
        table.put_block(type, std::move(block));
    }
    return table;
}

json violations_to_json(const std::vector<Violation>& violations)
{
    json arr = json::array();
    for (const auto& v : violations) {
        arr.push_back({{"code", to_string(v.code)}, {"types", v.types}, {"message", v.message}});
    }
    return arr;
}

json decomposition_to_json(const MainDecomposition& dec)
{
    json complement = json::object();
    for (const auto& [type, k] : dec.complement) complement[type] = k;
    return {{"clipped", dec.clipped}, {"complement", complement}};
}

json verdict_to_json(const MembershipVerdict& verdict)
{
    json out = {{"member", verdict.member}};
    out["alpha"] = verdict.alpha ? congruence_to_json(*verdict.alpha) : json(nullptr);
    if (verdict.failure) {
        const auto& f = *verdict.failure;
        out["reason"] = {{"kind", to_string(f.kind)}, {"type", f.type}, {"row", f.row},
                         {"col", f.col},           {"coord", f.coord}, {"detail", f.detail}};
    } else {
        out["reason"] = nullptr;
    }
    json residues = json::object();
    for (const auto& [type, c] : verdict.residues) residues[type] = congruence_to_json(c);
    out["residues"] = residues;
    return out;
}

MembershipVerdict verdict_from_json(const json& j)
{
    require_keys(j, {"member", "alpha", "reason", "residues"}, {}, "verdict");
    MembershipVerdict v;
    if (!j["member"].is_boolean()) throw SchemaError("verdict.member: expected a boolean");
    v.member = j["member"].get<bool>();
    if (!j["alpha"].is_null()) {
        v.alpha = Congruence{integer_from_json(j["alpha"].at("residue"), "verdict.alpha.residue"),
                             integer_from_json(j["alpha"].at("modulus"), "verdict.alpha.modulus")};
    }
    if (!j["reason"].is_null()) {
        const auto& r = j["reason"];
        require_keys(r, {"kind", "type", "row", "col", "coord", "detail"}, {}, "verdict.reason");
        static const std::map<std::string, FailureKind> kinds = {
            {to_string(FailureKind::BorderNotInMA), FailureKind::BorderNotInMA},
            {to_string(FailureKind::CornerNotInCoset), FailureKind::CornerNotInCoset},
            {to_string(FailureKind::CongruenceInconsistent), FailureKind::CongruenceInconsistent},
        };
        auto it = kinds.find(r["kind"].get<std::string>());
        if (it == kinds.end()) throw SchemaError("verdict.reason.kind: unknown failure kind");
        v.failure = MembershipFailure{it->second, r["type"].get<std::string>(), r["row"].get<std::size_t>(),
                                      r["col"].get<std::size_t>(), r["coord"].get<std::size_t>(),
                                      r["detail"].get<std::string>()};
    }
    for (const auto& [type, c] : j["residues"].items()) {
        v.residues[type] = Congruence{integer_from_json(c.at("residue"), "verdict.residues"),
                                      integer_from_json(c.at("modulus"), "verdict.residues")};
    }
    return v;
}

json closure_to_json(const ClosureResult& result)
{
    json out = {{"closes", result.closes}, {"failure", result.failure}};
    out["square_coefficient"] =
        result.square_coefficient ? integer_to_json(*result.square_coefficient) : json(nullptr);
    return out;
}

json descriptor_to_json(const MultGroupDescriptor& desc)
{
    json regulator = json::array();
    for (const auto& b : desc.regulator) {
        regulator.push_back({{"type", b.type},
                             {"source_rank", b.source_rank},
                             {"rank", b.total()},
                             {"corner_scale", integer_to_json(b.corner_scale)},
                             {"border_scale", integer_to_json(b.border_scale)},
                             {"corner_clipped", b.corner_clipped},
                             {"corner_free", b.corner_free},
                             {"border", b.border},
                             {"interior", b.interior}});
    }
    json basis = json::array();
    json generator = json::array();
    for (const auto& [type, numerator] : desc.generator_numerators) {
        const auto& m = desc.source.at(type).m;
        basis.push_back({{"type", type}, {"entry", {0, 0}}, {"slot", 0}, {"coefficient", integer_to_json(m * m)}});
        generator.push_back({{"type", type}, {"coefficient", Rational(numerator, m).str()},
                             {"numerator", integer_to_json(numerator)}});
    }
    return {{"spec", spec_to_json(desc.spec)},
            {"regulator_index", integer_to_json(regulator_index(desc.spec))},
            {"clipped_types", desc.spec.clipped_types()},
            {"regulator", regulator},
            {"decomposition", decomposition_to_json(desc.decomposition)},
            {"basis", basis},
            {"generator", generator}};
}

json coset_report_to_json(const CosetReport& report)
{
    json samples = json::array();
    for (const auto& s : report.samples) {
        samples.push_back({{"stratum", s.stratum},
                           {"member_d", s.member_d},
                           {"member_d1", s.member_d1},
                           {"alpha_relation_ok", s.alpha_relation_ok}});
    }
    return {{"gamma", integer_to_json(report.gamma)},
            {"gamma_interpretation", "gcd(gamma, n) = 1"},
            {"gamma_inverse", integer_to_json(report.gamma_inverse)},
            {"applicable", report.applicable},
            {"reason", report.reason},
            {"shifted_spec", report.applicable ? spec_to_json(report.shifted) : json(nullptr)},
            {"witness", table_to_json(report.witness)},
            {"witness_in_M2", report.witness_in_M2},
            {"samples", samples},
            {"verdicts_agree", report.verdicts_agree},
            {"confirmed", report.confirmed()}};
}

json example_report_to_json(const Example27Report& report)
{
    auto rows = [](const std::vector<Example27Row>& in) {
        json arr = json::array();
        for (const auto& r : in) {
            arr.push_back({{"alpha", integer_to_json(r.alpha)}, {"member_E", r.member_E}, {"member_F", r.member_F}});
        }
        return arr;
    };
    return {{"s1", integer_to_json(report.s1)},
            {"s2", integer_to_json(report.s2)},
            {"m", integer_to_json(report.m)},
            {"spec_E", spec_to_json(report.spec_E)},
            {"spec_F", spec_to_json(report.spec_F)},
            {"f_basis_valid", report.f_basis_valid},
            {"d1_matches", report.d1_matches},
            {"from_E", rows(report.from_E)},
            {"from_F", rows(report.from_F)},
            {"regulator_in_both", report.regulator_in_both},
            {"intersection_is_M2", report.confirmed}};
}

std::string canonical(const json& j)
{
    return j.dump(2) + "\n";
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

}  // namespace crq::io
