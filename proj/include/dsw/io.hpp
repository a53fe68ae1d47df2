#ifndef DSW_IO_HPP
#define DSW_IO_HPP

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsw/types.hpp"

namespace dsw {

/// Delimited text writer: '#'-prefixed header naming the columns, one record
/// per line, 17 significant digits.
class TableWriter {
public:
    TableWriter(const std::string& path, const std::vector<std::string>& columns);
    void row(const std::vector<Real>& values);
    void comment(const std::string& text);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream os_;
    size_t ncols_;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& msg);
    int line() const { return line_; }

private:
    int line_;
};

/// Plain key=value configuration with '#' comments.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const;
    Real get_real(const std::string& key, Real fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<Real> get_list(const std::string& key, const std::vector<Real>& fallback) const;
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    const std::map<std::string, std::string>& items() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

/// Run manifest: configuration echo, decision toggles, produced files, timing.
class Manifest {
public:
    void note(const std::string& key, const std::string& value);
    void file(const std::string& path);
    void write(const std::string& path) const;
    const std::vector<std::string>& files() const { return files_; }

private:
    std::vector<std::pair<std::string, std::string>> notes_;
    std::vector<std::string> files_;
};

std::string format_real(Real v);

}  // namespace dsw

#endif
