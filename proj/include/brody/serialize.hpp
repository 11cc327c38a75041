#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "brody/blowup.hpp"
#include "brody/cover.hpp"
#include "brody/deformation.hpp"
#include "brody/lattice.hpp"

namespace brody {

using Json = nlohmann::ordered_json;

// Complex numbers are [re, im]; exact entries are strings such as "1/2+3/4*sqrt(2)";
// integer matrices are row-major arrays of rows.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json int_matrix_to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const Json& j);

Json to_json(const Lattice& lattice);
Lattice lattice_from_json(const Json& j);
Json to_json(const RiemannForm& form);
Json to_json(const Submodule& sub);
Submodule submodule_from_json(const Json& j);
// Basis vectors in R^6 as an array of columns.
Json to_json(const RealSubspace& s);
RealSubspace subspace_from_json(const Json& j);
Json to_json(const ComplexLine& line);

Json to_json(const CoverNet& net);
CoverNet cover_from_json(const Json& j);
Json to_json(const MarginReport& report);
Json to_json(const ScanReport& report);
Json to_json(const DeformationReport& report);
Json to_json(const ExplosionRow& row);
Json to_json(const ObstructionReport& report);

// %.17g, so that doubles round-trip.
std::string format_double(double x);

/// Minimal CSV writer: fields holding a comma, quote or newline are quoted with
/// doubled inner quotes; lines end in CRLF.
class CsvWriter {
 public:
  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

}  // namespace brody
