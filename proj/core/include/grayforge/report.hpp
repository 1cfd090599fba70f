// Named-residual verification reports.
#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace grayforge {

struct CheckEntry {
    std::string name;
    double value = 0.0;      // residual magnitude (or the quantity checked)
    double tolerance = 0.0;  // pass iff |value| <= tolerance
    bool pass = false;
    bool informational = false;  // does not affect the overall verdict
};

/// A list of named residuals with tolerances; the overall verdict is the
/// conjunction of all non-informational entries. Non-finite residuals are
/// recorded as failed entries with a sentinel value so reports stay
/// serializable.
class VerificationReport {
public:
    explicit VerificationReport(std::string subject = {}) : subject_(std::move(subject)) {}

    CheckEntry& add(const std::string& name, double value, double tolerance) {
        const bool finite = std::isfinite(value);
        entries_.push_back({name, finite ? value : std::numeric_limits<double>::max(), tolerance,
                            finite && std::abs(value) <= tolerance, false});
        return entries_.back();
    }
    CheckEntry& add_informational(const std::string& name, double value, double tolerance) {
        const bool finite = std::isfinite(value);
        entries_.push_back({name, finite ? value : std::numeric_limits<double>::max(), tolerance,
                            finite && std::abs(value) <= tolerance, true});
        return entries_.back();
    }
    /// Predicate-style entry (value 1 = pass, 0 = fail).
    CheckEntry& add_flag(const std::string& name, bool ok) {
        entries_.push_back({name, ok ? 0.0 : 1.0, 0.5, ok, false});
        return entries_.back();
    }

    void merge(const VerificationReport& other) {
        for (const auto& e : other.entries_) entries_.push_back(e);
    }

    bool passed() const {
        for (const auto& e : entries_)
            if (!e.informational && !e.pass) return false;
        return true;
    }

    const CheckEntry* find(const std::string& name) const {
        for (const auto& e : entries_)
            if (e.name == name) return &e;
        return nullptr;
    }

    const std::string& subject() const { return subject_; }
    const std::vector<CheckEntry>& entries() const { return entries_; }

private:
    std::string subject_;
    std::vector<CheckEntry> entries_;
};

}  // namespace grayforge
