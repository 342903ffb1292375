#pragma once

// Command-line front end and figure output.

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "hmfan/boundary.hpp"
#include "hmfan/comb.hpp"
#include "hmfan/detseq.hpp"
#include "hmfan/fan.hpp"
#include "hmfan/funddom.hpp"

namespace hmfan::cli {

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2 };

struct Suite {
  std::string name;
  std::vector<Check> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass && !c.informational) return false;
    return true;
  }
};

Suite table_suite(const std::map<std::string, DivisorClass>& divisors);
Suite cubic_suite();
Suite relations_suite();
Suite symmetry_suite();
Suite star_suite();
Suite detseq_suite();
Suite boundary_suite();
Suite funddom_suite();
std::vector<Suite> run_verify();
nlohmann::json verify_report(const std::vector<Suite>& suites);

enum class Format { Csv, Svg, Json, Text };
Format format_from_string(const std::string& s);
Format format_from_path(const std::string& path);

// Entry point; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hmfan::cli

namespace hmfan::plot {

std::string tiling(cli::Format f, const Rational& window = 2);
std::string cubocta(cli::Format f);
std::string dotplot(cli::Format f, std::size_t n, int digits = 12);

}  // namespace hmfan::plot
