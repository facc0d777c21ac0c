#ifndef TWINBEAM_CSVIO_HPP
#define TWINBEAM_CSVIO_HPP

#include <ostream>
#include <string>

namespace twinbeam::io {

/// Shortest round-trip decimal form, locale independent ('.' decimal point).
std::string format_number(double v);

/// "# key = value" parameter-echo line.
void comment(std::ostream& os, const std::string& key, const std::string& value);
void comment(std::ostream& os, const std::string& key, double value);

/// Companion matplotlib script that plots the named CSV columns.
void write_plot_script(const std::string& script_path,
                       const std::string& csv_path,
                       const std::string& x_column,
                       const std::string& y_columns_csv);

}  // namespace twinbeam::io

#endif
