#ifndef SUPERCURRENT_JSONIO_HPP
#define SUPERCURRENT_JSONIO_HPP

#include <json.hpp>
#include <string>

#include "supercurrent/cochain.hpp"
#include "supercurrent/superspace.hpp"

namespace supercurrent {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct SectorReport;
struct LevelTable;
struct Mismatch;

ordered_json multidegree_to_json(const MultiDegree& n);
MultiDegree multidegree_from_json(const json& j);

ordered_json charge_to_json(const ChargeVector& c);

ordered_json sector_report_to_json(const SectorReport& r);
SectorReport sector_report_from_json(const json& j);

ordered_json level_table_to_json(const LevelTable& t);
ordered_json mismatches_to_json(const LieAlgebraSpec& a, const LieAlgebraSpec& b, int lmax,
                                const std::vector<Mismatch>& ms);

// terms as {"monomial": [[g_index, monomial_code], ...], "coeff": "p/q"}
ordered_json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const json& j);

std::string sector_report_to_csv_row(const SectorReport& r);
std::string sector_report_csv_header();

}  // namespace supercurrent

#endif
