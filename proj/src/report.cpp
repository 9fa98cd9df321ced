#include "iongate/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "iongate/errors.hpp"

namespace iongate {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(double v) {
    if (std::isnan(v)) {
        return "";
    }
    return format_double(v);
}

void TextReport::section(const std::string& name) {
    if (!text_.empty()) {
        text_ += '\n';
    }
    text_ += '[';
    text_ += name;
    text_ += "]\n";
}

void TextReport::kv(const std::string& key, const std::string& value) {
    text_ += key;
    text_ += " = ";
    text_ += value;
    text_ += '\n';
}

void TextReport::kv(const std::string& key, const char* value) {
    kv(key, std::string(value));
}

void TextReport::kv(const std::string& key, double value) {
    kv(key, format_double(value));
}

void TextReport::kv(const std::string& key, int value) {
    kv(key, std::to_string(value));
}

void TextReport::kv(const std::string& key, bool value) {
    kv(key, value ? "yes" : "no");
}

void TextReport::blank() { text_ += '\n'; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw ConfigError("failed writing '" + path + "'");
    }
}

} // namespace iongate
