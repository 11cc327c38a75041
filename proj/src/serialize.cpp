#include "brody/serialize.hpp"

#include <cstdio>

#include "brody/error.hpp"

namespace brody {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json int_matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("integer matrix must be a nonempty array of rows");
  IntMatrix m(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (j[r].size() != static_cast<std::size_t>(m.cols())) throw InvalidInput("ragged integer matrix");
    for (std::size_t c = 0; c < j[r].size(); ++c) m(r, c) = j[r][c].get<std::int64_t>();
  }
  return m;
}

Json to_json(const Lattice& lattice) {
  Json j;
  j["mode"] = lattice.is_exact() ? "exact" : "floating";
  Json gens = Json::array();
  for (int r = 0; r < 3; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 6; ++c) row.push_back(complex_to_json(lattice.generators()(r, c)));
    gens.push_back(std::move(row));
  }
  j["generators"] = std::move(gens);
  if (lattice.is_exact()) {
    Json exact = Json::array();
    const ExactCMatrix& g = lattice.exact_generators();
    for (int r = 0; r < 3; ++r) {
      Json row = Json::array();
      for (int c = 0; c < 6; ++c) row.push_back(Json::array({g(r, c).re.to_string(), g(r, c).im.to_string()}));
      exact.push_back(std::move(row));
    }
    j["exact_generators"] = std::move(exact);
  }
  return j;
}

Lattice lattice_from_json(const Json& j) {
  if (j.value("mode", "floating") == "exact") {
    const Json& e = j.at("exact_generators");
    ExactCMatrix g(3, 6);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 6; ++c)
        g(r, c) = ExactComplex(QuadNumber::parse(e[r][c][0].get<std::string>()),
                               QuadNumber::parse(e[r][c][1].get<std::string>()));
    return Lattice(std::move(g));
  }
  const Json& gj = j.at("generators");
  CMat36 g;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 6; ++c) g(r, c) = complex_from_json(gj[r][c]);
  return Lattice(g);
}

Json to_json(const RiemannForm& form) {
  Json h = Json::array();
  for (int r = 0; r < 3; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 3; ++c) row.push_back(complex_to_json(form.hermitian()(r, c)));
    h.push_back(std::move(row));
  }
  return Json{{"hermitian", std::move(h)}, {"alternating", int_matrix_to_json(form.alternating())}};
}

Json to_json(const Submodule& sub) { return Json{{"rank", sub.rank()}, {"hnf", int_matrix_to_json(sub.hnf())}}; }

Submodule submodule_from_json(const Json& j) { return Submodule(int_matrix_from_json(j.at("hnf"))); }

Json to_json(const RealSubspace& s) {
  Json basis = Json::array();
  for (int c = 0; c < s.dim(); ++c) {
    Json col = Json::array();
    for (int r = 0; r < 6; ++r) col.push_back(s.basis()(r, c));
    basis.push_back(std::move(col));
  }
  return Json{{"dim", s.dim()}, {"basis", std::move(basis)}};
}

RealSubspace subspace_from_json(const Json& j) {
  const Json& b = j.at("basis");
  Frame f(6, b.size());
  for (std::size_t c = 0; c < b.size(); ++c)
    for (int r = 0; r < 6; ++r) f(r, c) = b[c][r].get<double>();
  return RealSubspace::from_orthonormal(f);
}

Json to_json(const ComplexLine& line) {
  Json d = Json::array();
  for (int k = 0; k < 3; ++k) d.push_back(complex_to_json(line.direction()(k)));
  return Json{{"direction", std::move(d)}};
}

Json to_json(const CoverNet& net) {
  Json centers = Json::array();
  for (const auto& c : net.centers) centers.push_back(to_json(c)["basis"]);
  Json j{{"epsilon", net.epsilon}, {"seed", net.seed}, {"size", net.centers.size()}, {"centers", std::move(centers)}};
  if (!net.lines.empty()) {
    Json lines = Json::array();
    for (const auto& l : net.lines) lines.push_back(to_json(l)["direction"]);
    j["lines"] = std::move(lines);
  }
  return j;
}

CoverNet cover_from_json(const Json& j) {
  CoverNet net;
  net.epsilon = j.at("epsilon").get<double>();
  net.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& c : j.at("centers")) net.centers.push_back(subspace_from_json(Json{{"basis", c}}));
  if (j.contains("lines"))
    for (const auto& l : j.at("lines")) {
      CVec3 d;
      for (int k = 0; k < 3; ++k) d(k) = complex_from_json(l[k]);
      net.lines.emplace_back(d);
    }
  net.validate();
  return net;
}

Json to_json(const MarginReport& report) {
  Json cex = Json::array();
  for (const auto& c : report.counterexamples) {
    Json u = Json::array();
    for (int k = 0; k < 6; ++k) u.push_back(c.u(k));
    cex.push_back(Json{{"ball", c.ball}, {"margin", c.margin}, {"u", std::move(u)}, {"h_prime", to_json(c.h_prime)["basis"]}});
  }
  return Json{{"required", report.required},
              {"min_margin", report.overall_min},
              {"violations", report.violations},
              {"per_ball_min", report.min_margin},
              {"counterexamples", std::move(cex)}};
}

Json to_json(const ScanReport& report) {
  Json failures = Json::array();
  for (const auto& f : report.failures) failures.push_back(int_matrix_to_json(f));
  Json j{{"height", report.height},
         {"count", report.count},
         {"failure_count", report.failures.size()},
         {"failures", std::move(failures)},
         {"min_normalized_det", report.min_normalized_det}};
  if (report.argmin.size() > 0) j["argmin"] = int_matrix_to_json(report.argmin);
  return j;
}

Json to_json(const DeformationReport& report) {
  auto vec = [](const IntVec6& x) {
    Json a = Json::array();
    for (int k = 0; k < 6; ++k) a.push_back(x(k));
    return a;
  };
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json row{{"t", e.t},
             {"totally_real", e.result.totally_real},
             {"det", complex_to_json(e.result.det)},
             {"normalized_det", e.result.normalized_det},
             {"isometry", e.isometry},
             {"isometry_error", e.isometry_error}};
    if (e.result.exact_det)
      row["exact_det"] = Json::array({e.result.exact_det->re.to_string(), e.result.exact_det->im.to_string()});
    entries.push_back(std::move(row));
  }
  return Json{{"already_totally_real", report.already_totally_real},
              {"v", vec(report.v)},
              {"w", vec(report.w)},
              {"entries", std::move(entries)},
              {"as_expected", report.as_expected()}};
}

Json to_json(const ExplosionRow& row) {
  Json p = Json::array();
  for (int k = 0; k < 3; ++k) p.push_back(complex_to_json(row.lifted_point(k)));
  Json j{{"n", row.n}, {"ok", row.ok}};
  if (!row.ok) {
    j["error"] = row.error;
    return j;
  }
  j["s"] = complex_to_json(row.s);
  j["lifted_point"] = std::move(p);
  j["base_norm"] = row.base_norm;
  j["lifted_norm"] = row.lifted_norm;
  j["ratio"] = row.ratio;
  return j;
}

Json to_json(const ObstructionReport& report) {
  Json translates = Json::array();
  for (const auto& t : report.translates) {
    Json lambda = Json::array(), chart = Json::array(), g = Json::array();
    for (int k = 0; k < 3; ++k) {
      lambda.push_back(complex_to_json(t.lambda(k)));
      chart.push_back(complex_to_json(t.chart(k)));
    }
    for (int k = 0; k < 6; ++k) g.push_back(t.lattice_vector(k));
    translates.push_back(Json{{"lambda", std::move(lambda)}, {"chart", std::move(chart)}, {"lattice_vector", std::move(g)}});
  }
  Json rows = Json::array();
  for (const auto& r : report.rows) rows.push_back(to_json(r));
  return Json{{"closure_dim", report.closure_dim},
              {"sum_dim", report.sum_dim},
              {"closure_heuristic", report.closure_heuristic},
              {"translates", std::move(translates)},
              {"rows", std::move(rows)},
              {"max_ratio", report.max_ratio},
              {"growth", report.growth}};
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) text_ += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      text_ += f;
    } else {
      text_ += '"';
      for (char c : f) {
        if (c == '"') text_ += '"';
        text_ += c;
      }
      text_ += '"';
    }
  }
  text_ += "\r\n";
}

}  // namespace brody
