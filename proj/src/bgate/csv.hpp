#pragma once

// CSV data formats. Counts: `temperature,menu_id,state,count`. Exact
// frequencies: `temperature,menu_id,state,frequency`. Temperature tokens are
// kept verbatim so re-imports reproduce the grid bit-exactly.

#include <iosfwd>
#include <string>

#include "bgate/rsf.hpp"

namespace bgate {

inline constexpr const char* kCountHeader = "temperature,menu_id,state,count";
inline constexpr const char* kFrequencyHeader = "temperature,menu_id,state,frequency";

EmpiricalRSF ingest_csv(const std::string& path, const BuildOptions& options = {});
EmpiricalRSF ingest_csv_stream(std::istream& in, const BuildOptions& options,
                               const std::string& origin);

// Counts export; throws on exact data unless `exact` requests the frequency
// format. Rows ordered by (temperature, menu, state).
void export_csv(const EmpiricalRSF& rsf, const std::string& path, bool exact);
std::string render_csv(const EmpiricalRSF& rsf, bool exact);

}  // namespace bgate
