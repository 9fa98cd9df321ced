#pragma once

#include <string>

namespace iongate {

// Shortest decimal form that round-trips the double exactly, so reruns of
// identical configs are byte-identical and nothing is lost to rounding.
std::string format_double(double v);

// CSV cell: like format_double but NaN becomes an empty field (used for
// sweep rows that did not solve).
std::string csv_field(double v);

// Incrementally built key = value report with [section] headers.
class TextReport {
public:
    void section(const std::string& name);
    void kv(const std::string& key, const std::string& value);
    void kv(const std::string& key, const char* value);
    void kv(const std::string& key, double value);
    void kv(const std::string& key, int value);
    void kv(const std::string& key, bool value);
    void blank();

    const std::string& str() const { return text_; }

private:
    std::string text_;
};

// Writes the whole string in one go; throws ConfigError when the path is
// not writable. Callers assemble everything first so a failed run never
// leaves partial output behind.
void write_file(const std::string& path, const std::string& content);

} // namespace iongate
