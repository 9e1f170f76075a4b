#pragma once

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "isacsense/config_file.hpp"
#include "isacsense/errors.hpp"

namespace isacsense {

/// RFC-4180-style writer. Fields containing commas, quotes, or newlines
/// are quoted with embedded quotes doubled; everything else is written
/// bare. Numbers go through format_double so a reader gets the exact
/// binary value back.
class CsvWriter {
  public:
    CsvWriter(std::ostream& out, const std::string& schema) : out_(out) {
        out_ << "# schema: " << schema << "\n";
    }

    void header(const std::vector<std::string>& names) { row_strings(names); }

    void row_strings(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            write_field(fields[i]);
        }
        out_ << "\n";
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << format_double(values[i]);
        }
        out_ << "\n";
    }

  private:
    void write_field(const std::string& f) {
        if (f.find_first_of(",\"\n\r") == std::string::npos) {
            out_ << f;
            return;
        }
        out_ << '"';
        for (char c : f) {
            if (c == '"') out_ << '"';
            out_ << c;
        }
        out_ << '"';
    }

    std::ostream& out_;
};

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file '" + path + "'");
    return out;
}

}  // namespace isacsense
