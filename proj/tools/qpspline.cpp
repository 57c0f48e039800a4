// qpspline: build, evaluate, verify and print counting box splines.
//
// Exit codes: 0 ok, 1 verification mismatch, 2 malformed input,
// 3 construction precondition violated, 4 point outside the domain,
// 5 internal error.

#include "qps/error.hpp"
#include "qps/oracle.hpp"
#include "qps/pretty.hpp"
#include "qps/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { kOk = 0, kMismatch = 1, kInput = 2, kPrecondition = 3, kDomain = 4, kInternal = 5 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qps::SchemaError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qps::SchemaError("cannot write " + path);
  out << text;
}

qps::IntVector parse_point(const std::string& text) {
  qps::IntVector p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw qps::SchemaError("empty coordinate in --point");
    p.push_back(qps::parse_integer(item.substr(b, e - b + 1)));
  }
  if (p.empty()) throw qps::SchemaError("--point needs at least one coordinate");
  return p;
}

// A file holding either a box spline or a problem (which is then built).
qps::BoxSpline load_spline(const std::string& path) {
  qps::Json j = qps::parse_json(read_file(path));
  if (j.is_object() && j.contains("kind")) return qps::construct(qps::problem_from_json(j));
  return qps::box_spline_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting functions of Diophantine systems, semi-linear sets and vector partition functions "
               "as box splines"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string point;
  std::string artifact;
  std::int64_t bound = 20;
  unsigned jobs = 1;

  auto* count = app.add_subcommand("count", "Build the box spline of a problem file");
  count->add_option("-i,--input", input, "Problem JSON")->required();
  count->add_option("-o,--output", output, "Box spline JSON (stdout when omitted)");

  auto* eval = app.add_subcommand("eval", "Evaluate a box spline at a point");
  eval->add_option("-i,--input", input, "Box spline JSON or problem JSON")->required();
  eval->add_option("-p,--point", point, "Comma-separated coordinates, e.g. \"2,3\"")->required();

  auto* verify = app.add_subcommand("verify", "Compare the construction with brute-force counting");
  verify->add_option("-i,--input", input, "Problem JSON")->required();
  verify->add_option("-b,--bound", bound, "Grid bound B")->check(CLI::NonNegativeNumber);
  verify->add_option("-j,--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("-a,--artifact", artifact, "Check this box spline JSON instead of building one");

  auto* show = app.add_subcommand("show", "Print regions and quasi-polynomials");
  show->add_option("-i,--input", input, "Box spline JSON or problem JSON")->required();
  bool as_json = false;
  show->add_flag("--json", as_json, "Print the canonical box spline JSON instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (count->parsed()) {
      auto problem = qps::problem_from_json(qps::parse_json(read_file(input)));
      const qps::BoxSpline f = qps::construct(problem);
      write_output(output, qps::dump(qps::box_spline_to_json(f)));
      if (!output.empty() && output != "-") {
        std::cerr << f.arrangement.size() << " planes, " << f.pieces.size() << " nonzero pieces written to "
                  << output << "\n";
      }
    } else if (eval->parsed()) {
      auto f = load_spline(input);
      auto x = parse_point(point);
      if (x.size() != f.dim()) throw qps::SchemaError("--point has " + std::to_string(x.size()) +
                                                      " coordinates, the box spline has dimension " +
                                                      std::to_string(f.dim()));
      std::cout << qps::bs_eval(f, x).get_str() << "\n";
    } else if (verify->parsed()) {
      auto problem = qps::problem_from_json(qps::parse_json(read_file(input)));
      qps::DiffReport report =
          artifact.empty() ? qps::diff_test(problem, bound, jobs)
                           : qps::diff_test(problem, qps::box_spline_from_json(qps::parse_json(read_file(artifact))),
                                            bound, jobs);
      std::cout << qps::dump(qps::report_to_json(report));
      return report.ok() ? kOk : kMismatch;
    } else if (show->parsed()) {
      auto f = load_spline(input);
      std::cout << (as_json ? qps::dump(qps::box_spline_to_json(f)) : qps::show(f));
    }
  } catch (const qps::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const qps::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const qps::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const qps::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
