#pragma once

#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "isacsense/config_file.hpp"
#include "isacsense/errors.hpp"

namespace isacsense {

/// Ordered key=value record of one CLI run: the subcommand, every resolved
/// argument and config value, the seed, and the files written. Contains no
/// timestamps or host identifiers, so re-running the same artifact version
/// from a manifest reproduces the outputs byte for byte.
class RunManifest {
  public:
    void add(const std::string& key, const std::string& value) { items_.emplace_back(key, value); }
    void add(const std::string& key, double value) { add(key, format_double(value)); }
    void add_config(const Config& cfg) {
        for (const auto& [k, v] : config_items(cfg)) add("config." + k, v);
    }

    const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : items_) {
            if (k == key) return &v;
        }
        return nullptr;
    }

    std::string require(const std::string& key) const {
        const std::string* v = find(key);
        if (!v) throw config_error("manifest is missing key '" + key + "'");
        return *v;
    }

    std::vector<std::string> values_with_prefix(const std::string& prefix) const {
        std::vector<std::string> out;
        for (const auto& [k, v] : items_) {
            if (k.rfind(prefix, 0) == 0) out.push_back(v);
        }
        return out;
    }

    void write(std::ostream& out) const {
        out << "# run manifest v1\n";
        for (const auto& [k, v] : items_) out << k << " = " << v << "\n";
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw config_error("cannot open manifest file '" + path + "' for writing");
        write(out);
    }

    static RunManifest load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw config_error("cannot open manifest file '" + path + "'");
        RunManifest m;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::string t = detail::trim(line);
            if (t.empty() || t[0] == '#') continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos) {
                throw config_error(path + ":" + std::to_string(line_no) + ": expected key = value");
            }
            m.add(detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
        }
        return m;
    }

  private:
    std::vector<std::pair<std::string, std::string>> items_;
};

}  // namespace isacsense
