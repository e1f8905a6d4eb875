#pragma once

#include <map>
#include <string>
#include <vector>

namespace repulse {

// All floating-point output at 17 significant digits, dot decimal, C locale,
// so identical runs produce byte-identical artifacts.
std::string format_real(double v);

// Minimal deterministic JSON emitter: flat object, keys sorted, UTF-8, '\n' terminated.
class JsonObject {
public:
    void set(const std::string& key, double v);
    void set(const std::string& key, long long v);
    void set(const std::string& key, int v) { set(key, static_cast<long long>(v)); }
    void set(const std::string& key, const std::string& v);
    void set(const std::string& key, const char* v) { set(key, std::string(v)); }
    void set(const std::string& key, bool v);
    void set_raw_array(const std::string& key, const std::vector<std::string>& elements);

    std::string str() const;
    void write(const std::string& path) const;

private:
    std::map<std::string, std::string> fields_;
};

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace repulse
