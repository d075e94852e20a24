#pragma once

#include <string>

#include "qpcert/certify.hpp"
#include "qpcert/fixtures.hpp"
#include "qpcert/galerkin.hpp"

namespace qpcert {

enum class ReportFormat { Text, Json, Csv };

/// "text" | "json" | "csv"; throws Error otherwise.
ReportFormat parse_format(const std::string& s);

/// Numbers in json/csv carry 12 significant digits so identical runs give
/// byte-identical output.
std::string fmt_num(double v);

std::string render_analysis(const Analysis& a, ReportFormat f);
std::string render_certificate(const Certificate& c, ReportFormat f);
std::string render_solution(const Solution& s, ReportFormat f);
std::string render_sweep(const SweepReport& r, ReportFormat f);
std::string render_fixture(const FixtureResult& r, ReportFormat f);

}  // namespace qpcert
