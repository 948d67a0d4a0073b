#pragma once

#include "webtensor/algebra.hpp"
#include "webtensor/loop.hpp"
#include "webtensor/multilinear.hpp"

#include <stdexcept>
#include <string>

namespace webtensor {

// Parse error with 1-based line location; line 0 means a file-level problem.
class ManifestError : public std::runtime_error {
 public:
  ManifestError(int line, const std::string& message);
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  std::string message_;
};

// Serializable description of an algebra with an adapted splitting and a
// section jet. R and S are stored symmetrized with values in the stabilizer
// coordinates (indices above v_dim).
struct Manifest {
  std::string name;
  int dim = 0;
  int v_dim = 0;
  LieAlgebra algebra{1};
  MultilinearMap R{2, 1, 1};
  MultilinearMap S{3, 1, 1};

  bool operator==(const Manifest& other) const;
};

// Text format, one directive per line, '#' starts a comment:
//   name <label>
//   dim <N>
//   v_dim <n>
//   bracket i j k p/q     (component of [e_i, e_j] on e_k; 1-based, i,j,k <= N)
//   R j k alpha p/q       (component of R(e_j,e_k) on e_alpha; j,k <= n < alpha <= N)
//   S j k l alpha p/q     (component of S(e_j,e_k,e_l) on e_alpha)
// dim and v_dim must precede entry lines. Repeating an entry with the same
// value is accepted; a conflicting value is an error. R/S entries are
// symmetric in their lower indices; one representative per unordered index
// set suffices.
Manifest parse_manifest(const std::string& text);
Manifest load_manifest_file(const std::string& path);

// Canonical serialization; parse_manifest(emit_manifest(m)) == m.
std::string emit_manifest(const Manifest& m);

// Named bundle the checks operate on.
struct Instance {
  std::string name;
  LieAlgebra alg;
  Split split;
  SectionJet section;
};

// Builds the instance, symmetrizing and validating the section shape.
// The algebra laws themselves are checked by the validate suite, not here.
Instance build_instance(const Manifest& m);

}  // namespace webtensor
