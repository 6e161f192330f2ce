#ifndef FRACMOM_CLI_HARNESS_HPP
#define FRACMOM_CLI_HARNESS_HPP

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fracmom::testing {

struct CliResult {
    int exit_code;
    std::string out;
};

inline CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(FRACMOM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, {}};
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path() /
                    ("fracmom_test_XXXXXX");
        std::string tmpl = base.string();
        if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
        path_ = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name, const std::string& contents) const {
        auto p = (std::filesystem::path(path_) / name).string();
        std::ofstream(p) << contents;
        return p;
    }
    std::string path(const std::string& name) const {
        return (std::filesystem::path(path_) / name).string();
    }

private:
    std::string path_;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace fracmom::testing

#endif
