#ifndef BINROW_IO_HPP
#define BINROW_IO_HPP

#include <string>
#include <vector>

#include "binrow/clt.hpp"
#include "binrow/moments.hpp"
#include "binrow/rows.hpp"

namespace binrow {

/// 15 significant digits, '.' decimal separator; the fixture-stable float
/// rendering used by every CSV/JSON emitter here.
std::string format_double(double x);

std::string row_to_json(const SparseRow& row);
std::string row_to_csv(const SparseRow& row);

std::string moment_table_to_csv(const MomentTable& t);
std::string moment_table_to_json(const MomentTable& t);

std::string discrepancies_to_csv(const std::vector<Discrepancy>& ds);
std::string discrepancies_to_json(const std::vector<Discrepancy>& ds);

std::string clt_report_to_csv(const CltReport& r);
std::string clt_report_to_json(const CltReport& r);

std::string second_moments_to_csv(const std::vector<SecondMomentReport>& rs);
std::string second_moments_to_json(const std::vector<SecondMomentReport>& rs);

std::string lemma_ratios_to_csv(const std::vector<LemmaRatioRow>& rs);
std::string lemma_ratios_to_json(const std::vector<LemmaRatioRow>& rs);

}  // namespace binrow

#endif
