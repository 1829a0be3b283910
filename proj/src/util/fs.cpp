#include "memguard/util/fs.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace memguard {

std::string read_file(const std::filesystem::path& path, ErrorCode code) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(code, "cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::size_t write_file_atomic(const std::filesystem::path& path, const std::string& content,
                              ErrorCode code) {
    std::error_code ec;
    auto dir = path.parent_path();
    if (!dir.empty()) {
        std::filesystem::create_directories(dir, ec);
    }
    auto tmp = path;
    tmp += ".tmp-" + std::to_string(static_cast<unsigned long>(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(code, "cannot open '" + tmp.string() + "' for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp, ec);
            throw Error(code, "short write to '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(code, "cannot rename into place: '" + path.string() + "'");
    }
    return content.size();
}

}  // namespace memguard
