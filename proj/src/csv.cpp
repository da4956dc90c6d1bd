#include "subdicke/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "subdicke/errors.hpp"

namespace subdicke {

std::string format_sig12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", x);
    return buf;
}

void write_csv_atomic(const std::string& path, const std::string& header,
                      const std::vector<std::string>& rows) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw ConfigError("cannot open output file: " + tmp.string());
        out << header << '\n';
        for (const auto& r : rows)
            out << r << '\n';
        out.flush();
        if (!out)
            throw ConfigError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
        throw ConfigError("rename failed: " + tmp.string() + " -> " + target.string() +
                          " (" + ec.message() + ")");
}

} // namespace subdicke
