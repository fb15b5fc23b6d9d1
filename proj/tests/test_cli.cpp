// Runs the built gemo binary and checks exit codes and diagnostics.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string err;
};

Run gemo_cli(const std::string& args)
{
    const fs::path log = fs::temp_directory_path() / "gemo_cli_stderr.txt";
    const std::string cmd = std::string("\"") + GEMO_CLI_PATH + "\" " + args + " >/dev/null 2>\"" + log.string() + "\"";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.err = ss.str();
    return r;
}

} // namespace

TEST_CASE("solve succeeds on the example configs")
{
    const fs::path out = fs::temp_directory_path() / "gemo_cli_out";
    fs::remove_all(out);
    CHECK(gemo_cli("solve " GEMO_CONFIG_DIR "/example1.cfg --out " + out.string()).code == 0);
    CHECK(fs::exists(out / "spectrum.json"));
    CHECK(gemo_cli("solve " GEMO_CONFIG_DIR "/example2.cfg --space both --grid-n 256 --out " + out.string()).code == 0);
    CHECK(fs::exists(out / "states_x.csv"));
    fs::remove_all(out);
}

TEST_CASE("malformed expression exits 2 with stage and offset")
{
    const fs::path cfg = fs::temp_directory_path() / "gemo_cli_bad.cfg";
    std::ofstream(cfg) << "deformation = expression\nmu = 1/(1+x\nx_min = -1\nx_max = 1\n";
    const auto r = gemo_cli("solve " + cfg.string());
    CHECK(r.code == 2);
    CHECK(r.err.find("stage: expr.parse") != std::string::npos);
    CHECK(r.err.find("offset: 7") != std::string::npos);
    fs::remove(cfg);

    const auto p = gemo_cli("parse-check \"1/(1+x\"");
    CHECK(p.code == 2);
    CHECK(p.err.find("offset: 7") != std::string::npos);
}

TEST_CASE("input errors exit 2")
{
    CHECK(gemo_cli("solve /nonexistent/file.cfg").code == 2);
    CHECK(gemo_cli("bogus").code == 2);
    CHECK(gemo_cli("figure fig9").code == 2);
    CHECK(gemo_cli("solve " GEMO_CONFIG_DIR "/example1.cfg --set nokey=1").code == 2);
    CHECK(gemo_cli("parse-check \"exp(-g*x)-1\" --param g").code == 0);
}

TEST_CASE("perturbed alpha fails the spectrum criterion with exit 1")
{
    const auto r = gemo_cli("verify --alpha 1.01 --only 1");
    CHECK(r.code == 1);
    CHECK(r.err.find("FAIL [1]") != std::string::npos);
    CHECK(r.err.find("0.0201") != std::string::npos);
}
