#include "flatpbd/verify.hpp"

#include <algorithm>
#include <numeric>

#include "flatpbd/errors.hpp"

namespace flatpbd {
namespace {

constexpr int kMaxViolations = 32;  // enough witnesses to debug with

std::string block_to_string(const Block& b) {
  std::string s = "{";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(b[i]);
  }
  return s + "}";
}

std::string pair_to_string(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

void add_violation(VerificationReport& report, std::string kind,
                   std::string witness) {
  if (static_cast<int>(report.violations.size()) < kMaxViolations)
    report.violations.push_back({std::move(kind), std::move(witness)});
  else if (static_cast<int>(report.violations.size()) == kMaxViolations)
    report.violations.push_back({"truncated", "further violations omitted"});
}

// Shared core: `owner[p]` assigns each point to a group (singletons for a
// PBD). Cross-group pairs must be covered exactly once, within-group pairs
// never, and blocks may meet a group at most once.
void check_blocks_and_pairs(int v, const std::vector<Block>& blocks,
                            const std::vector<int>& owner, const SizeSet& k,
                            VerificationReport& report) {
  std::vector<std::uint8_t> cover(static_cast<std::size_t>(v) *
                                      static_cast<std::size_t>(v),
                                  0);
  auto cover_at = [&](int a, int b) -> std::uint8_t& {
    return cover[static_cast<std::size_t>(a) * static_cast<std::size_t>(v) +
                 static_cast<std::size_t>(b)];
  };

  for (const Block& block : blocks) {
    ++report.block_size_histogram[static_cast<int>(block.size())];
    if (!std::binary_search(k.begin(), k.end(),
                            static_cast<int>(block.size())))
      add_violation(report, "bad-block-size", block_to_string(block));
    bool in_range = true;
    for (int p : block)
      if (p < 0 || p >= v) {
        add_violation(report, "point-out-of-range", block_to_string(block));
        in_range = false;
      }
    if (!in_range) continue;
    for (std::size_t i = 0; i < block.size(); ++i) {
      for (std::size_t j = i + 1; j < block.size(); ++j) {
        int a = block[i], b = block[j];
        if (a == b) {
          add_violation(report, "repeated-point", block_to_string(block));
          continue;
        }
        if (a > b) std::swap(a, b);
        if (owner[static_cast<std::size_t>(a)] ==
            owner[static_cast<std::size_t>(b)]) {
          add_violation(report, "pair-within-group",
                        pair_to_string(a, b) + " in " + block_to_string(block));
          continue;
        }
        std::uint8_t& c = cover_at(a, b);
        if (c == 1)
          add_violation(report, "pair-covered-twice", pair_to_string(a, b));
        if (c < 2) ++c;
      }
    }
  }

  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      if (owner[static_cast<std::size_t>(a)] ==
          owner[static_cast<std::size_t>(b)])
        continue;
      ++report.pairs_total;
      if (cover_at(a, b) >= 1)
        ++report.pairs_covered;
      else
        add_violation(report, "pair-uncovered", pair_to_string(a, b));
    }
  }
}

}  // namespace

std::string VerificationReport::summary() const {
  std::string s = passed ? "passed" : "FAILED";
  s += "; pairs " + std::to_string(pairs_covered) + "/" +
       std::to_string(pairs_total) + "; sizes";
  for (auto [size, count] : block_size_histogram)
    s += " " + std::to_string(size) + ":" + std::to_string(count);
  if (!passed && !violations.empty())
    s += "; first: " + violations.front().kind + " " +
         violations.front().witness;
  return s;
}

VerificationReport verify_pbd(const IncidenceDesign& design, const SizeSet& k) {
  VerificationReport report;
  if (design.v < 0) {
    add_violation(report, "negative-v", std::to_string(design.v));
    return report;
  }
  std::vector<int> owner(static_cast<std::size_t>(design.v));
  std::iota(owner.begin(), owner.end(), 0);
  check_blocks_and_pairs(design.v, design.blocks, owner, k, report);
  report.passed = report.violations.empty();
  return report;
}

VerificationReport verify_gdd(const GroupedDesign& gdd, const SizeSet& k) {
  VerificationReport report;
  std::vector<int> owner;
  try {
    owner = gdd.group_of_points();
  } catch (const PreconditionError& e) {
    add_violation(report, "bad-partition", e.what());
    return report;
  }
  check_blocks_and_pairs(gdd.v, gdd.blocks, owner, k, report);
  report.passed = report.violations.empty();
  return report;
}

AdmissibilityRecord admissibility(long long v, const SizeSet& k) {
  if (k.empty()) throw PreconditionError("admissibility: K is empty");
  for (int x : k)
    if (x < 2) throw PreconditionError("admissibility: block size < 2");
  AdmissibilityRecord rec;
  for (long long x : k) {
    rec.alpha = std::gcd(rec.alpha, x - 1);
    rec.beta = std::gcd(rec.beta, x * (x - 1));
  }
  rec.admissible = ((v - 1) % rec.alpha == 0) && ((v * (v - 1)) % rec.beta == 0);
  return rec;
}

}  // namespace flatpbd
