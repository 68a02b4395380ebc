#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace bocpd::testkit {

// Fresh scratch directory under the system temp dir; wiped on construction
// so reruns start clean.
class TempDir {
public:
    explicit TempDir(const std::string& name)
        : path_(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& leaf) const {
        return path_ / leaf;
    }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Runs a shell command, returns its exit code.
inline int run_command(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace bocpd::testkit
