#pragma once

#include <string>
#include <vector>

namespace udf {

/// One verified property. `witness` is a canonical text rendering of the
/// offending data when the check fails (empty otherwise).
struct CheckEntry {
    std::string name;
    bool passed = true;
    std::string detail;
    std::string witness;
};

/// Outcome of a checker. Checkers never throw for a failed property; the
/// failure is an entry here.
struct Report {
    std::string subject;
    std::vector<CheckEntry> entries;

    bool passed() const
    {
        for (const auto& e : entries)
            if (!e.passed)
                return false;
        return true;
    }

    const CheckEntry* first_failure() const
    {
        for (const auto& e : entries)
            if (!e.passed)
                return &e;
        return nullptr;
    }

    void add(std::string name, bool ok, std::string detail = {}, std::string witness = {})
    {
        entries.push_back({std::move(name), ok, std::move(detail), std::move(witness)});
    }

    void merge(const Report& other, const std::string& prefix = {})
    {
        for (auto e : other.entries) {
            if (!prefix.empty())
                e.name = prefix + e.name;
            entries.push_back(std::move(e));
        }
    }
};

} // namespace udf
