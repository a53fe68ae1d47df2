#include "dsw/io.hpp"

#include <cstdio>
#include <sstream>

namespace dsw {

std::string format_real(Real v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

TableWriter::TableWriter(const std::string& path, const std::vector<std::string>& columns)
    : path_(path), os_(path), ncols_(columns.size()) {
    if (!os_) throw std::runtime_error("TableWriter: cannot open " + path);
    os_ << "#";
    for (const auto& c : columns) os_ << " " << c;
    os_ << "\n";
}

void TableWriter::row(const std::vector<Real>& values) {
    if (values.size() != ncols_)
        throw std::invalid_argument("TableWriter: column count mismatch");
    bool first = true;
    for (Real v : values) {
        if (!first) os_ << " ";
        os_ << format_real(v);
        first = false;
    }
    os_ << "\n";
}

void TableWriter::comment(const std::string& text) { os_ << "# " << text << "\n"; }

ConfigError::ConfigError(int line, const std::string& msg)
    : std::runtime_error("config line " + std::to_string(line) + ": " + msg), line_(line) {}

namespace {

std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_text(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(lineno, "expected key=value, got '" + s + "'");
        const std::string key = strip(s.substr(0, eq));
        const std::string val = strip(s.substr(eq + 1));
        if (key.empty()) throw ConfigError(lineno, "empty key");
        cfg.kv_[key] = val;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError(0, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_text(buf.str());
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

Real Config::get_real(const std::string& key, Real fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        size_t pos = 0;
        const Real v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(0, "key '" + key + "': not a number: '" + it->second + "'");
    }
}

int Config::get_int(const std::string& key, int fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        size_t pos = 0;
        const int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(0, "key '" + key + "': not an integer: '" + it->second + "'");
    }
}

std::vector<Real> Config::get_list(const std::string& key,
                                   const std::vector<Real>& fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<Real> out;
    std::string item;
    std::istringstream is(it->second);
    while (std::getline(is, item, ',')) {
        try {
            out.push_back(std::stod(strip(item)));
        } catch (const std::exception&) {
            throw ConfigError(0, "key '" + key + "': bad list entry '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError(0, "key '" + key + "': empty list");
    return out;
}

void Manifest::note(const std::string& key, const std::string& value) {
    notes_.emplace_back(key, value);
}

void Manifest::file(const std::string& path) { files_.push_back(path); }

void Manifest::write(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("Manifest: cannot open " + path);
    os << "# dswlab run manifest\n";
    for (const auto& [k, v] : notes_) os << k << " = " << v << "\n";
    os << "# outputs\n";
    for (const auto& f : files_) os << "file = " << f << "\n";
}

}  // namespace dsw
