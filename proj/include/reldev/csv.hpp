#pragma once

#include <filesystem>

#include "reldev/series.hpp"

namespace reldev {

// Reads a series from a text file, one observation per row. Fields may be
// separated by comma, semicolon, tab or spaces; the last field of each row is
// the value (leading time/label columns are ignored). A first row that does
// not parse is treated as a header; any later unparsable row raises
// parse_error with its 1-based line number.
TimeSeries ingest_csv(const std::filesystem::path& path);

}  // namespace reldev
