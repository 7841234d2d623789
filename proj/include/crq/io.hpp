#pragma once

// JSON documents for specs, elements, tables and reports.
//
// Spec:    {"types": [{"id": "t1", "inf_primes": [5], "rank": 2, "m": 7, "s": 3}, ...]}
// Element: {"t1": ["2/7", "0"], "t2": ["-1"]}
// Table:   {"t1": [[["1","0"], ["0","0"]], [["0","0"], ["0","1/5"]]], ...}
//          block[i][j] is the coordinate vector of u_ij.
//
// Integers are JSON numbers when they fit in 64 bits and decimal strings
// otherwise; both forms are accepted on input. Serialization is canonical:
// types sorted by id, primes ascending, object keys sorted.

#include "crq/elements.hpp"
#include "crq/group.hpp"
#include "crq/multgroup.hpp"
#include "crq/tables.hpp"

#include "json.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace crq::io {

using nlohmann::json;

/// Input rejected by a document schema.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json integer_to_json(const Integer& x);
Integer integer_from_json(const json& j, const std::string& where);

json spec_to_json(const GroupSpec& spec);
GroupSpec spec_from_json(const json& j);

json element_to_json(const AmbientElement& g);
AmbientElement element_from_json(const json& j);

json table_to_json(const MultTable& table);
MultTable table_from_json(const json& j);

json violations_to_json(const std::vector<Violation>& violations);
json decomposition_to_json(const MainDecomposition& dec);
json verdict_to_json(const MembershipVerdict& verdict);
MembershipVerdict verdict_from_json(const json& j);
json closure_to_json(const ClosureResult& result);
json descriptor_to_json(const MultGroupDescriptor& desc);
json coset_report_to_json(const CosetReport& report);
json example_report_to_json(const Example27Report& report);

/// Canonical text form: two-space indentation and a trailing newline.
std::string canonical(const json& j);

/// Reads and parses a JSON file; errors become SchemaError.
json read_json_file(const std::filesystem::path& path);

}  // namespace crq::io
