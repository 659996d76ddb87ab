#pragma once
#include <cstdio>
#include <string>
#include <vector>

// Minimal insertion-ordered JSON writer. Numbers are printed with 17
// significant digits so doubles round-trip exactly and output is byte-stable.

namespace grspin {

class JsonWriter {
public:
    static std::string number(double v) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array(const std::string& key) {
        key_prefix(key);
        out_ += '[';
        first_.push_back(true);
    }
    void end_array() { close(']'); }

    void field(const std::string& key, double v) { raw(key, number(v)); }
    void field(const std::string& key, long v) { raw(key, std::to_string(v)); }
    void field(const std::string& key, int v) { raw(key, std::to_string(v)); }
    void field(const std::string& key, bool v) { raw(key, v ? "true" : "false"); }
    void field(const std::string& key, const std::string& v) { raw(key, quote(v)); }
    void null_field(const std::string& key) { raw(key, "null"); }
    void object_field(const std::string& key) {
        key_prefix(key);
        out_ += '{';
        first_.push_back(true);
    }
    void element(double v) { raw_element(number(v)); }
    void element(const std::string& v) { raw_element(quote(v)); }
    void begin_object_element() { open('{'); }

    const std::string& str() const { return out_; }

private:
    static std::string quote(const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') q += '\\';
            if (c == '\n') {
                q += "\\n";
                continue;
            }
            q += c;
        }
        q += '"';
        return q;
    }
    void sep() {
        if (!first_.empty()) {
            if (!first_.back()) out_ += ',';
            first_.back() = false;
        }
    }
    void key_prefix(const std::string& key) {
        sep();
        out_ += quote(key);
        out_ += ':';
    }
    void raw(const std::string& key, const std::string& value) {
        key_prefix(key);
        out_ += value;
    }
    void raw_element(const std::string& value) {
        sep();
        out_ += value;
    }
    void open(char c) {
        sep();
        out_ += c;
        first_.push_back(true);
    }
    void close(char c) {
        out_ += c;
        first_.pop_back();
    }

    std::string out_;
    std::vector<bool> first_;
};

} // namespace grspin
