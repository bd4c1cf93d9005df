#include "chordex/report.hpp"

#include <cstdio>

namespace chordex {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string format_vec(const Vec& v) {
    std::string s;
    for (int i = 0; i < v.dim(); ++i) {
        if (i) s += ',';
        s += format_g17(v[i]);
    }
    return s;
}

std::string kv(const std::string& key, const std::string& value) {
    return key + "=" + value + "\n";
}
std::string kv(const std::string& key, double value) { return kv(key, format_g17(value)); }
std::string kv(const std::string& key, const Vec& value) { return kv(key, format_vec(value)); }
std::string kv(const std::string& key, bool value) { return kv(key, std::string(value ? "1" : "0")); }
std::string kv(const std::string& key, int value) { return kv(key, std::to_string(value)); }

}  // namespace chordex
