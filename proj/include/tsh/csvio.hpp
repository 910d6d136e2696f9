#ifndef TSH_CSVIO_HPP
#define TSH_CSVIO_HPP

#include <cstddef>
#include <optional>
#include <string>

#include "tsh/series.hpp"

namespace tsh {

struct CsvLoadResult {
    TimeSeries series;
    std::size_t skipped_rows = 0;  // rows without a parseable value
};

/// Reads one numeric column from a header-first CSV file. Quoted fields,
/// embedded commas/newlines and "" escapes are handled; comma thousands
/// separators inside numeric fields are stripped. The column can be given
/// by name or as a zero-based index. Rows whose value does not parse are
/// skipped and counted.
CsvLoadResult load_csv(const std::string& path, const std::string& value_column,
                       const std::optional<std::string>& label_column = std::nullopt);

/// Writes `index,value[,label]` rows with full double precision.
void write_series_csv(const TimeSeries& s, const std::string& path);

}  // namespace tsh

#endif
