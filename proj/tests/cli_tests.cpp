// End-to-end checks of the command-line tool: spawns the built binary,
// captures stdout and exit codes, and compares against golden output.
#include <array>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

std::string g_binary;
std::string g_data;
int g_failures = 0;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = g_binary + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {127, ""};
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128;
    return {code, out};
}

void expect(bool ok, const std::string& what) {
    if (!ok) {
        std::cerr << "FAIL: " << what << "\n";
        ++g_failures;
    }
}

void expect_contains(const RunResult& r, const std::string& needle,
                     const std::string& what) {
    expect(r.out.find(needle) != std::string::npos,
           what + " (missing '" + needle + "' in:\n" + r.out + ")");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: cli_tests <binary> <datadir>\n";
        return 2;
    }
    g_binary = argv[1];
    g_data = argv[2];

    // classify: verdicts and exit codes
    {
        RunResult r = run("classify \"genus = inf; ends = pt*\"");
        expect(r.exit_code == 0, "classify loch ness exits 0");
        expect_contains(r, "named: loch-ness", "loch ness recognized");
        expect_contains(r, "dense: yes", "loch ness dense");
        expect_contains(r, "pmap-dense: yes", "loch ness pmap dense");

        RunResult fin = run("classify \"genus = 0; ends = pt\"");
        expect(fin.exit_code == 2, "finite-type surface exits 2");

        RunResult bad = run("classify \"genus = 0; ends = pt*\"");
        expect(bad.exit_code == 2, "invalid marking exits 2");

        RunResult syn = run("classify \"genus = ; ends = pt\"");
        expect(syn.exit_code == 2, "syntax error exits 2");
    }

    // determinism: identical argv => byte-identical output
    {
        std::string args =
            "classify \"genus = 0; ends = omega(pt) + omega(pt)\" "
            "--format structured";
        RunResult a = run(args);
        RunResult b = run(args);
        expect(a.exit_code == 0 && a.out == b.out, "structured determinism");
        RunResult c = run("classify \"genus = inf; ends = pt* + omega(pt)\"");
        RunResult d = run("classify \"genus = inf; ends = pt* + omega(pt)\"");
        expect(c.out == d.out, "text determinism");
    }

    // strict mode never flips a verdict to its opposite
    {
        RunResult def = run("classify \"genus = inf; ends = pt* + omega(pt)\"");
        RunResult strict =
            run("classify \"genus = inf; ends = pt* + omega(pt)\" --strict");
        expect_contains(def, "somewhere-dense: no", "figure-7 default");
        expect_contains(strict, "somewhere-dense: unknown", "figure-7 strict");
        expect_contains(strict, "dense: no", "strict keeps dense=no");
    }

    // ends subcommands
    {
        RunResult r = run("ends normalize \"omega(pt) + pt\"");
        expect(r.out == "characteristic=(1,1); cantor_parts=[]; form=omega(pt)\n",
               "ends normalize golden (got: " + r.out + ")");
        RunResult o = run("ends order \"genus = 0; ends = omega(pt)\"");
        expect_contains(o, "order: 1<0", "flute order");
        RunResult m = run("ends maximal \"genus = inf; ends = pt* + pt*\"");
        expect_contains(m, "maximal-ends: 2", "ladder maximal count");
        RunResult c = run("ends maximal cantor");
        expect_contains(c, "maximal-ends: cantor-many", "cantor maximal");
    }

    // fraisse subcommands on the data files
    {
        RunResult ap = run("fraisse check " + g_data +
                           "/orders.cls --property ap");
        expect(ap.out.rfind("Holds (bounds s=2,k=4)", 0) == 0,
               "orders AP holds (got: " + ap.out + ")");
        RunResult hp = run("fraisse check " + g_data +
                           "/orders.cls --property hp");
        expect_contains(hp, "Holds", "orders HP");
        RunResult jf = run("fraisse check " + g_data +
                           "/twisted.cls --property jep-fp");
        expect(jf.out.rfind("Fails", 0) == 0, "twisted class fails pair JEP");

        RunResult ch = run("fraisse chain " + g_data +
                           "/orders.cls --steps 3");
        expect(ch.exit_code == 0, "chain runs");
        expect_contains(ch, "stages: 4", "chain stage count");

        RunResult fy = run("fraisse fraissefy " + g_data +
                           "/cycle5.struct --generators " + g_data +
                           "/cycle5_rotation.perms");
        expect_contains(fy, "group-order: 5", "rotation group order");

        RunResult badprop = run("fraisse check " + g_data +
                                "/orders.cls --property nope");
        expect(badprop.exit_code == 2, "unknown property rejected");
    }

    // curves subcommands
    {
        RunResult tw = run("curves twist --n 3 --round 1,2");
        expect(tw.out == "s1 s1\n", "twist word golden");
        RunResult act = run("curves act --n 4 --coords \"a=[0,0]; b=[-1,1]\" "
                            "--word \"s2 s2^-1\"");
        expect(act.out == "n=4; a=[0,0]; b=[-1,1]\n", "act round-trip");
        RunResult in = run("curves intersect --n 4 --round 2,3 "
                           "--coords \"a=[0,0]; b=[1,0]\"");
        expect(in.out == "2\n", "intersection value");
        RunResult badn = run("curves act --n 2 --coords \"a=[]; b=[]\" "
                             "--word \"s1\"");
        expect(badn.exit_code == 2, "n too small rejected");
    }

    // unknown flags are rejected
    {
        RunResult r = run("classify \"genus = inf; ends = pt*\" --bogus");
        expect(r.exit_code == 2, "unknown flag rejected");
    }

    if (g_failures == 0) {
        std::cout << "cli tests: all passed\n";
        return 0;
    }
    std::cout << "cli tests: " << g_failures << " failures\n";
    return 1;
}
