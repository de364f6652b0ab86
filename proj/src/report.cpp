#include "pqg/report.hpp"

#include "pqg/error.hpp"

namespace pqg {

void Report::pass(const std::string& axiom, bool numeric) {
    auto& t = axioms_[axiom];
    ++t.passed;
    if (numeric) ++t.numeric;
}

void Report::fail(const std::string& axiom, json witness) {
    auto& t = axioms_[axiom];
    ++t.failed;
    if (t.witnesses.size() < max_witnesses) t.witnesses.push_back(std::move(witness));
}

void Report::skip(const std::string& axiom) { ++axioms_[axiom].skipped; }

void Report::unknown(const std::string& axiom, json witness) {
    auto& t = axioms_[axiom];
    ++t.unknown;
    if (t.witnesses.size() < max_witnesses) t.witnesses.push_back(std::move(witness));
}

void Report::check(const std::string& axiom, bool ok, const json& witness) {
    if (ok)
        pass(axiom);
    else
        fail(axiom, witness);
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (auto& [name, t] : other.axioms_) {
        auto& mine = axioms_[prefix + name];
        mine.passed += t.passed;
        mine.failed += t.failed;
        mine.skipped += t.skipped;
        mine.numeric += t.numeric;
        mine.unknown += t.unknown;
        for (auto& w : t.witnesses)
            if (mine.witnesses.size() < max_witnesses) mine.witnesses.push_back(w);
    }
}

bool Report::ok() const { return failures() == 0; }

size_t Report::failures() const {
    size_t f = 0;
    for (auto& [name, t] : axioms_) f += t.failed + t.unknown;
    return f;
}

size_t Report::count(const std::string& axiom) const {
    auto it = axioms_.find(axiom);
    return it == axioms_.end() ? 0 : it->second.passed;
}

const Tally& Report::at(const std::string& axiom) const {
    auto it = axioms_.find(axiom);
    if (it == axioms_.end()) throw Error("report", "no checks recorded for " + axiom);
    return it->second;
}

json Report::to_json() const {
    json out = json::object();
    for (auto& [name, t] : axioms_) {
        json j;
        j["passed"] = t.passed;
        j["failed"] = t.failed;
        j["skipped"] = t.skipped;
        j["numeric"] = t.numeric;
        j["unknown"] = t.unknown;
        std::string status = "pass";
        if (t.failed)
            status = "fail";
        else if (t.unknown)
            status = "unknown";
        else if (t.numeric)
            status = "certified-numeric";
        else if (!t.passed && t.skipped)
            status = "skipped-boundary";
        j["status"] = status;
        j["witnesses"] = t.witnesses;
        out[name] = j;
    }
    return out;
}

}  // namespace pqg
