#include "csvio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace twinbeam::io {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void comment(std::ostream& os, const std::string& key, const std::string& value) {
  os << "# " << key << " = " << value << "\n";
}

void comment(std::ostream& os, const std::string& key, double value) {
  comment(os, key, format_number(value));
}

void write_plot_script(const std::string& script_path,
                       const std::string& csv_path, const std::string& x_column,
                       const std::string& y_columns_csv) {
  std::ofstream f(script_path);
  if (!f) throw std::runtime_error("cannot write " + script_path);
  f << "#!/usr/bin/env python3\n"
       "import csv\n"
       "import matplotlib.pyplot as plt\n"
       "\n"
       "rows = []\n"
       "with open(" << "\"" << csv_path << "\"" << ") as fh:\n"
       "    for line in fh:\n"
       "        if not line.startswith('#'):\n"
       "            rows.append(line.strip())\n"
       "reader = csv.DictReader(rows)\n"
       "data = {k: [] for k in reader.fieldnames}\n"
       "for r in reader:\n"
       "    for k, v in r.items():\n"
       "        data[k].append(float(v))\n"
       "for col in " << "\"" << y_columns_csv << "\"" << ".split(','):\n"
       "    plt.plot(data[\"" << x_column << "\"], data[col], label=col)\n"
       "plt.xlabel(\"" << x_column << "\")\n"
       "plt.axhline(1.0, color='gray', lw=0.5)\n"
       "plt.legend()\n"
       "plt.show()\n";
}

}  // namespace twinbeam::io
