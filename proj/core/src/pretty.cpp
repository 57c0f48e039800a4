#include "qps/pretty.hpp"

#include <sstream>

namespace qps {

std::string plane_text(const Hyperplane& h) { return h.form().to_string(); }

std::string region_text(const Arrangement& arr, const SignVector& s) {
  std::string out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    if (k) out += ", ";
    out += plane_text(arr[k]);
    const int sign = s.at(k);
    out += sign > 0 ? " > 0" : (sign < 0 ? " < 0" : " = 0");
  }
  return out;
}

std::string show(const BoxSpline& f) {
  std::ostringstream out;
  out << "box spline on " << to_string(f.domain()) << "^" << f.dim() << ": " << f.arrangement.size()
      << " planes, " << f.pieces.size() << " nonzero region(s)\n";
  out << "planes:\n";
  for (std::size_t k = 0; k < f.arrangement.size(); ++k) {
    out << "  [" << k + 1 << "] " << plane_text(f.arrangement[k]) << " = 0\n";
  }
  for (const auto& [s, q] : f.pieces) {
    out << "region " << s.str() << ": " << region_text(f.arrangement, s) << "\n";
    const bool periodic = q.period() > 1;
    if (periodic) {
      const auto& basis = q.lattice().basis();
      if (q.lattice().is_diagonal()) {
        out << "  periods (";
        for (std::size_t i = 0; i < q.dim(); ++i) out << (i ? ", " : "") << basis[i][i];
        out << ")\n";
      } else {
        out << "  period lattice spanned by";
        for (const auto& row : basis) {
          out << " (";
          for (std::size_t i = 0; i < row.size(); ++i) out << (i ? ", " : "") << row[i];
          out << ")";
        }
        out << "\n";
      }
    }
    for (const auto& [r, p] : q.table()) {
      out << "  ";
      if (periodic) {
        out << "x in (";
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? ", " : "") << r[i];
        out << ") + lattice: ";
      }
      out << p.to_string() << "\n";
    }
    if (periodic) out << "  other classes: 0\n";
  }
  out << "all other regions: 0\n";
  return out.str();
}

}  // namespace qps
