#ifndef SZG_CONFIG_HPP
#define SZG_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "szg/types.hpp"

namespace szg {

// Flat `key.path = value` configuration. Values are numbers, quoted or bare
// strings, booleans, lists, or inline tables `{ k = v, ... }` which expand to
// dotted key paths. `#` starts a comment.
struct ConfigValue {
    enum class Kind { number, string, boolean, list };
    Kind kind = Kind::number;
    double num = 0.0;
    std::string str;
    bool flag = false;
    std::vector<ConfigValue> items;
    int line = 0, col = 0;
};

using ConfigMap = std::map<std::string, ConfigValue>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::string& path);

// "0.3", "0.5i", "0.3+0i", "1-2i", "i", "-i"
cpx parse_complex(const std::string& s);

// Typed, consuming access; finish() turns every unread key into a hard error.
class ConfigReader {
  public:
    explicit ConfigReader(const ConfigMap& m) : m_(m) {}

    bool has(const std::string& key) const { return m_.count(key) != 0; }
    double number(const std::string& key, double def);
    long integer(const std::string& key, long def);
    std::string str(const std::string& key, const std::string& def);
    bool boolean(const std::string& key, bool def);
    std::vector<double> numbers(const std::string& key, std::vector<double> def);
    // a string "a+bi" or a two-element list [re, im]
    cpx complex_val(const std::string& key, cpx def);
    std::vector<cpx> complex_list(const std::string& key);
    void finish() const;

  private:
    const ConfigValue* take(const std::string& key);
    const ConfigMap& m_;
    std::map<std::string, bool> used_;
};

}  // namespace szg

#endif
