#pragma once

#include <string>
#include <vector>

#include "qorth/analysis.hpp"
#include "qorth/coefficients.hpp"
#include "qorth/spectrum.hpp"

/// JSON and CSV renderings. JSON documents are pretty-printed with two-space
/// indentation and keys in a fixed order; floats use the shortest decimal
/// form that round-trips. CSV floats use 17 significant digits. Non-finite
/// values appear as JSON null.
namespace qorth::io {

std::string to_json(const HypothesisReport& report);
std::string to_json(const DiscreteMeasure& measure);
std::string to_json(const Theorem1Verdict& verdict);
std::string to_json(const TmsResult& result);
std::string to_json(const LinearizationTable& table);
std::string to_json(const Remark1Stats& stats);

/// `k,xi,mass`, k from 1.
std::string support_csv(const DiscreteMeasure& measure);

/// Two-column CSV with the given header names; the first column is an index.
std::string sequence_csv(const std::string& index_name, const std::string& value_name,
                         const std::vector<std::size_t>& index, const std::vector<double>& values);

/// 17 significant digits, locale independent.
std::string format_double(double v);

}  // namespace qorth::io
