#include "pbg/report.hpp"

#include "pbg/errors.hpp"

namespace pbg {

std::string_view error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::TableArity: return "TableArity";
        case ErrorKind::NotByAutomorphisms: return "NotByAutomorphisms";
        case ErrorKind::CompositionDomain: return "CompositionDomain";
        case ErrorKind::NotComposable: return "NotComposable";
        case ErrorKind::EmptyCarrier: return "EmptyCarrier";
        case ErrorKind::NotSurjective: return "NotSurjective";
        case ErrorKind::InvalidCrossedModule: return "InvalidCrossedModule";
        case ErrorKind::StructureMapNotHom: return "StructureMapNotHom";
        case ErrorKind::NotBijective: return "NotBijective";
        case ErrorKind::NotFree: return "NotFree";
        case ErrorKind::IllDefinedComposition: return "IllDefinedComposition";
        case ErrorKind::BaseNotFiberProduct: return "BaseNotFiberProduct";
        case ErrorKind::InvalidGerbe: return "InvalidGerbe";
        case ErrorKind::NotBaseTrivial: return "NotBaseTrivial";
        case ErrorKind::PreconditionNotMet: return "PreconditionNotMet";
        case ErrorKind::NotFreeAtLevel: return "NotFreeAtLevel";
        case ErrorKind::IllDefined: return "IllDefined";
        case ErrorKind::CarrierTooLarge: return "CarrierTooLarge";
        case ErrorKind::NoGroupElement: return "NoGroupElement";
        case ErrorKind::IllDefinedOnClasses: return "IllDefinedOnClasses";
        case ErrorKind::SquareFailure: return "SquareFailure";
        case ErrorKind::SearchExhausted: return "SearchExhausted";
        case ErrorKind::NotAFibration: return "NotAFibration";
        case ErrorKind::QuotientIllDefined: return "QuotientIllDefined";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::DanglingReference: return "DanglingReference";
        case ErrorKind::UnknownSubcommand: return "UnknownSubcommand";
    }
    return "Unknown";
}

bool is_input_error(ErrorKind k) {
    switch (k) {
        case ErrorKind::TableArity:
        case ErrorKind::CompositionDomain:
        case ErrorKind::NotComposable:
        case ErrorKind::EmptyCarrier:
        case ErrorKind::NotSurjective:
        case ErrorKind::BaseNotFiberProduct:
        case ErrorKind::NotBaseTrivial:
        case ErrorKind::PreconditionNotMet:
        case ErrorKind::CarrierTooLarge:
        case ErrorKind::SearchExhausted:
        case ErrorKind::ParseError:
        case ErrorKind::DanglingReference:
        case ErrorKind::UnknownSubcommand:
            return true;
        default:
            return false;
    }
}

CheckResult& ValidationReport::slot(std::string_view check) {
    for (auto& c : checks_)
        if (c.name == check) return c;
    checks_.push_back(CheckResult{std::string(check), 0, {}});
    return checks_.back();
}

void ValidationReport::declare(std::string_view check) { slot(check); }

void ValidationReport::fail(std::string_view check, std::string witness) {
    auto& c = slot(check);
    ++c.violations;
    if (c.witnesses.size() < kWitnessCap) c.witnesses.push_back(std::move(witness));
}

void ValidationReport::expect(std::string_view check, bool cond, const std::string& witness) {
    if (cond)
        declare(check);
    else
        fail(check, witness);
}

void ValidationReport::merge(const ValidationReport& other, std::string_view prefix) {
    for (const auto& c : other.checks_) {
        std::string name = prefix.empty() ? c.name : std::string(prefix) + "." + c.name;
        auto& s = slot(name);
        s.violations += c.violations;
        for (const auto& w : c.witnesses)
            if (s.witnesses.size() < kWitnessCap) s.witnesses.push_back(w);
    }
    for (auto it = other.notes_.begin(); it != other.notes_.end(); ++it) {
        std::string key = prefix.empty() ? it.key() : std::string(prefix) + "." + it.key();
        notes_[key] = it.value();
    }
}

bool ValidationReport::ok() const {
    for (const auto& c : checks_)
        if (c.violations) return false;
    return true;
}

bool ValidationReport::has(std::string_view check) const {
    for (const auto& c : checks_)
        if (c.name == check) return true;
    return false;
}

bool ValidationReport::passed(std::string_view check) const {
    for (const auto& c : checks_)
        if (c.name == check) return c.violations == 0;
    return false;
}

std::size_t ValidationReport::violations(std::string_view check) const {
    for (const auto& c : checks_)
        if (c.name == check) return c.violations;
    return 0;
}

std::size_t ValidationReport::total_violations() const {
    std::size_t n = 0;
    for (const auto& c : checks_) n += c.violations;
    return n;
}

std::string ValidationReport::first_failure() const {
    for (const auto& c : checks_)
        if (c.violations)
            return c.name + (c.witnesses.empty() ? std::string() : " at " + c.witnesses.front());
    return {};
}

json ValidationReport::to_json() const {
    json checks = json::array();
    for (const auto& c : checks_) {
        checks.push_back({{"name", c.name},
                          {"pass", c.violations == 0},
                          {"violations", c.violations},
                          {"witnesses", c.witnesses}});
    }
    json out = {{"checks", checks}, {"pass", ok()}};
    if (!notes_.empty()) out["notes"] = notes_;
    return out;
}

}  // namespace pbg
