// Smoke coverage of every CLI subcommand against the fixture corpus.
// Usage: test_cli <path-to-cwa-cli> <path-to-fixtures>

#include <sys/wait.h>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

std::string g_cli, g_fix;
int g_failures = 0;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    FILE* p = popen((g_cli + " " + args + " 2>/dev/null").c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void expect(const std::string& what, const std::string& args, int code,
            const std::string& needle = "") {
    RunResult r = run(args);
    bool ok = r.exit_code == code && (needle.empty() || r.out.find(needle) != std::string::npos);
    std::cout << (ok ? "ok  " : "FAIL") << " " << what << "\n";
    if (!ok) {
        std::cout << "  args: " << args << "\n  exit: " << r.exit_code << " (want " << code
                  << ")\n  out: " << r.out.substr(0, 300) << "\n";
        ++g_failures;
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: test_cli <cwa-cli> <fixtures-dir>\n";
        return 64;
    }
    g_cli = argv[1];
    g_fix = argv[2];
    std::string basics = g_fix + "/s0_basics.cwa";

    expect("validate", "validate " + basics, 0, "ok:");
    expect("validate rejects bad references", "validate " + g_fix + "/bad_reference.cwa", 1);
    expect("info all", "info " + basics, 0, "[info circle]");
    expect("info one", "info " + g_fix + "/dn_d1.cwa --complex d4", 0, "dimension = 3");
    expect("homology", "homology " + basics + " --complex rp2", 0, "H~_1 = Z/2");
    expect("homology truncates", "homology " + basics + " --complex rp2 --max-degree 0", 0,
           "H~_0 = 0");
    expect("cone", "cone " + basics + " --complex circle", 0, "cell c.e dim=2 layer=2");
    expect("suspend", "suspend " + basics + " --complex circle --as s2", 0,
           "cell e dim=2 layer=2");
    expect("wedge", "wedge " + basics + " --left circle --right circle", 0, "cell e~2");
    expect("paste", "paste " + g_fix + "/paste_intervals.cwa --x I1 --b v --via glue --y I2", 0,
           "cell f dim=1 layer=1");
    expect("quotient", "quotient " + basics + " --complex disk --cells v,e1,e2", 0,
           "cell f dim=2");
    expect("flatten", "flatten " + g_fix + "/flatten_demo.cwa --complex ring --core-as circ", 0,
           "# origin g/e");
    expect("change-core retract",
           "change-core " + g_fix + "/expansion.cwa --complex X --to-core B --alpha alpha "
           "--beta beta",
           0, "[map psi");
    expect("change-core equivalence",
           "change-core " + g_fix + "/expansion.cwa --complex X --to-core B --alpha alpha "
           "--beta beta --mode equivalence --h-a ha --h-b hb",
           0, "[map phi");
    expect("check passes", "check " + basics + " --cone-acyclic disk --euler disk", 0, "pass");
    expect("check failure exits 2",
           "check " + g_fix + "/retract_checks.cwa --retract-summand "
           "circle,circle,bad_phi,bad_psi",
           2, "FAIL");
    expect("fuzz", "fuzz --seed 7 --count 3", 0, "failures=0");
    expect("improper input errors exit 1",
           "cone " + g_fix + "/flatten_demo.cwa --complex missing", 1);

    if (g_failures == 0) std::cout << "cli smoke: all passed\n";
    return g_failures == 0 ? 0 : 1;
}
