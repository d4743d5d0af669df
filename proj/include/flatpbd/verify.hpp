#pragma once

#include <map>
#include <string>
#include <vector>

#include "flatpbd/design.hpp"

namespace flatpbd {

struct Violation {
  std::string kind;     // e.g. "pair-covered-twice", "bad-block-size"
  std::string witness;  // the offending pair or block, printed
};

// Outcome of an exact axiom check. `passed` iff `violations` is empty.
struct VerificationReport {
  bool passed = false;
  std::vector<Violation> violations;
  std::map<int, long long> block_size_histogram;
  long long pairs_total = 0;     // pairs that must be covered exactly once
  long long pairs_covered = 0;   // distinct such pairs covered at least once

  std::string summary() const;
};

// Every unordered pair in exactly one block; all block sizes in `k`.
// Failures are report entries, never exceptions.
VerificationReport verify_pbd(const IncidenceDesign& design, const SizeSet& k);

// GDD axioms: groups partition the points, a block meets a group at most
// once, cross-group pairs covered exactly once, within-group pairs never.
VerificationReport verify_gdd(const GroupedDesign& gdd, const SizeSet& k);

// The divisibility conditions alpha(K) | v-1 and beta(K) | v(v-1).
struct AdmissibilityRecord {
  long long alpha = 0;  // gcd{k-1 : k in K}
  long long beta = 0;   // gcd{k(k-1) : k in K}
  bool admissible = false;
};

AdmissibilityRecord admissibility(long long v, const SizeSet& k);

}  // namespace flatpbd
