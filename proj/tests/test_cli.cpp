/* Drives the installed command line binary end to end. Takes the binary
 * path as its one argument and exercises each subcommand through the
 * shell, checking exit codes and output files. */

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

int failures = 0;
std::string bin;

int run(const std::string& args) {
    std::string cmd = bin + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    if (rc == -1 || !WIFEXITED(rc)) return -1;
    return WEXITSTATUS(rc);
}

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "ok: " << what << "\n";
    } else {
        ++failures;
        std::cout << "FAILED: " << what << "\n";
    }
}

long count_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) return -1;
    long n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
}

bool same_bytes(const std::string& a, const std::string& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::ostringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: test_cli <binary>\n";
        return 2;
    }
    bin = argv[1];
    const std::string dir = "/tmp/stepreg_cli";
    std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());

    expect(run("") == 2, "no subcommand is a usage error");
    expect(run("--help") == 0, "help exits clean");
    expect(run("frobnicate") == 2, "unknown subcommand is a usage error");

    expect(run("simulate --kind f0 --n 1024 --seed 7 --out " + dir + "/d.csv") == 0, "simulate runs");
    expect(count_lines(dir + "/d.csv") == 1025, "simulate wrote 1024 rows plus header");
    expect(run("simulate --kind f0 --n 64 --out " + dir + "/x.csv") == 2, "simulate without seed is a usage error");
    expect(run("simulate --kind banana --n 4 --seed 1 --out " + dir + "/x.csv") == 2, "unknown kind is a usage error");

    expect(run("simulate --kind null --n 64 --seed 9 --out " + dir + "/small.csv") == 0, "small simulate runs");
    expect(run("fit --data " + dir + "/small.csv --iters 4000 --seed 5 --out " + dir + "/fit") == 0, "fit runs");
    expect(count_lines(dir + "/fit.curve.csv") == 514, "fit curve covers the default grid");
    expect(count_lines(dir + "/fit.json") > 0, "fit wrote a summary");
    expect(run("fit --data " + dir + "/missing.csv --iters 100 --seed 5 --out " + dir + "/nope") == 2,
           "fit on a missing file is a usage error");
    expect(run("fit --data " + dir + "/small.csv --iters 100 --out " + dir + "/nope") == 2,
           "fit without seed is a usage error");

    expect(run("fit --data " + dir + "/small.csv --iters 4000 --seed 5 --out " + dir + "/fit2") == 0, "fit reruns");
    expect(same_bytes(dir + "/fit.curve.csv", dir + "/fit2.curve.csv"), "same seed, same curve bytes");
    expect(run("fit --data " + dir + "/small.csv --iters 4000 --seed 6 --out " + dir + "/fit3") == 0, "fit again");
    expect(!same_bytes(dir + "/fit.curve.csv", dir + "/fit3.curve.csv"), "new seed, new curve");

    expect(run("simulate --kind f0 --n 6 --seed 11 --out " + dir + "/six.csv") == 0, "six point simulate");
    expect(run("oracle --data " + dir + "/six.csv --out " + dir + "/oracle") == 0, "oracle runs");
    expect(count_lines(dir + "/oracle.kpost.csv") == 11, "oracle posted ten piece masses");
    expect(run("oracle --data " + dir + "/d.csv --out " + dir + "/toolarge") == 1,
           "oracle on a large dataset is a runtime failure");
    expect(run("oracle --data " + dir + "/six.csv --kmax 99 --out " + dir + "/badk") == 2,
           "absurd piece cap is a usage error");

    expect(run("dyadic --data " + dir + "/d.csv --out " + dir + "/dyadic") == 0, "dyadic runs");
    expect(count_lines(dir + "/dyadic.levels.csv") == 12, "dyadic posted eleven level masses");

    expect(run("eval --data " + dir + "/fit.curve.csv --kind null --out " + dir + "/eval.json") == 0, "eval runs");
    expect(count_lines(dir + "/eval.json") > 0, "eval wrote metrics");
    expect(run("eval --data " + dir + "/fit.curve.csv --kind 2d") == 2, "eval rejects a planar kind");

    expect(run("simulate --kind 2d --n 12 --seed 13 --out " + dir + "/pts.csv") == 0, "planar simulate runs");
    expect(count_lines(dir + "/pts.csv") == 13, "planar simulate wrote 12 rows plus header");
    expect(run("voronoi-fit --data " + dir + "/pts.csv --iters 3000 --seed 2 --out " + dir + "/vor") == 0,
           "cell chain runs");
    expect(count_lines(dir + "/vor.surface.csv") == 13, "cell surface covers the data points");
    expect(run("voronoi-fit --data " + dir + "/pts.csv --iters 3000 --seed 2 --weighted --gamma 4 --out " +
               dir + "/vorw") == 0,
           "weighted cell chain runs");

    if (failures == 0) std::cout << "all cli checks passed\n";
    return failures == 0 ? 0 : 1;
}
