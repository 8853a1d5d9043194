#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pbg {

using nlohmann::json;

struct CheckResult {
    std::string name;
    std::size_t violations = 0;
    std::vector<std::string> witnesses;

    bool ok() const { return violations == 0; }
};

// Named checks with exact violation counts and a bounded witness list.
class ValidationReport {
public:
    static constexpr std::size_t kWitnessCap = 16;

    void declare(std::string_view check);
    void fail(std::string_view check, std::string witness);
    // Shorthand: declare, and fail when cond is false.
    void expect(std::string_view check, bool cond, const std::string& witness);

    void merge(const ValidationReport& other, std::string_view prefix = {});
    void note(const std::string& key, json value) { notes_[key] = std::move(value); }

    bool ok() const;
    bool has(std::string_view check) const;
    bool passed(std::string_view check) const;
    std::size_t violations(std::string_view check) const;
    std::size_t total_violations() const;
    const std::vector<CheckResult>& checks() const { return checks_; }
    const json& notes() const { return notes_; }

    std::string first_failure() const;
    json to_json() const;

private:
    CheckResult& slot(std::string_view check);

    std::vector<CheckResult> checks_;
    json notes_ = json::object();
};

}  // namespace pbg
