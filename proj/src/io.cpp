#include "repulse/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "repulse/errors.hpp"

namespace repulse {

std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonObject::set(const std::string& key, double v) {
    // JSON has no inf/nan tokens; keep such values as strings.
    fields_[key] = std::isfinite(v) ? format_real(v) : "\"" + format_real(v) + "\"";
}
void JsonObject::set(const std::string& key, long long v) { fields_[key] = std::to_string(v); }

void JsonObject::set(const std::string& key, const std::string& v) {
    std::string out = "\"";
    for (char c : v) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    fields_[key] = out;
}

void JsonObject::set(const std::string& key, bool v) { fields_[key] = v ? "true" : "false"; }

void JsonObject::set_raw_array(const std::string& key, const std::vector<std::string>& elements) {
    std::string out = "[";
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i) out += ", ";
        out += elements[i];
    }
    out += "]";
    fields_[key] = out;
}

std::string JsonObject::str() const {
    std::string out = "{\n";
    bool first = true;
    for (const auto& [k, v] : fields_) {
        if (!first) out += ",\n";
        first = false;
        out += "  \"" + k + "\": " + v;
    }
    out += "\n}\n";
    return out;
}

void JsonObject::write(const std::string& path) const { write_text_file(path, str()); }

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw argument_error("cannot open for writing: " + path);
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!f) throw numeric_error("write failed: " + path);
}

}  // namespace repulse
