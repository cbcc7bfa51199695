#pragma once

// Identity-verification suites. Each suite draws its grid from its own
// seeded stream, so a suite produces the same records alone or inside "all".

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lerchfrac/harness.hpp"

namespace lerchfrac {

/// lemmas, theorem1, conjugation, functional-equation, theorem2, riemann
const std::vector<std::string>& suite_names();

struct VerifyReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<ComparisonRecord> records;

    [[nodiscard]] int count(Status s) const;
    [[nodiscard]] bool all_pass() const { return count(Status::Fail) == 0 && count(Status::Skipped) == 0; }
};

/// Throws DomainError for an unknown suite name ("all" runs every suite).
VerifyReport run_verify(std::string_view suite, std::uint64_t seed, const EvalSettings& st);

/// Header line with the suite and seed, then one JSON line per record.
void write_report(std::ostream& out, const VerifyReport& report);

/// "verify <suite> (seed N): P pass, F fail, S skipped"
std::string summary_line(const VerifyReport& report);

}  // namespace lerchfrac
