#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace pqg {

using json = nlohmann::json;

struct Tally {
    size_t passed = 0;
    size_t failed = 0;
    size_t skipped = 0;   // boundary-skipped or truncated
    size_t numeric = 0;   // passed through a high-precision certificate
    size_t unknown = 0;   // undecided at the requested bound
    std::vector<json> witnesses;
};

// Per-axiom tallies; std::map keeps output order stable.
class Report {
public:
    static constexpr size_t max_witnesses = 8;

    void pass(const std::string& axiom, bool numeric = false);
    void fail(const std::string& axiom, json witness);
    void skip(const std::string& axiom);
    void unknown(const std::string& axiom, json witness);
    void check(const std::string& axiom, bool ok, const json& witness);
    void merge(const Report& other, const std::string& prefix = "");

    bool ok() const;
    size_t failures() const;
    size_t count(const std::string& axiom) const;
    const Tally& at(const std::string& axiom) const;
    bool has(const std::string& axiom) const { return axioms_.count(axiom) != 0; }
    const std::map<std::string, Tally>& axioms() const { return axioms_; }
    json to_json() const;

private:
    std::map<std::string, Tally> axioms_;
};

}  // namespace pqg
