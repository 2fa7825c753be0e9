#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>

#include "intricacy/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "intricacy");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = intricacy::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    const auto d = fs::temp_directory_path() / "intricacy-cli-test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string sft_one() { return write("sft1.json", R"({"alphabet_size": 3, "adjacency": [[1,1,0],[0,0,1],[1,1,0]]})"); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("topo table") {
  const auto r = run({"topo", "--input", sft_one(), "--n", "10", "--coeffs", "uniform"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "n,block_k,H_n,Asc_n,Int_n,Acc_n,Alt_n,coeffs_spec,h_top,method,tail_bound,paper_rounded,provenance");
  CHECK(ls[1].find("Asc_n=0.399") != std::string::npos);
  CHECK(ls[1].find("ref:equal-counts/I") != std::string::npos);
}

TEST_CASE("topo with several horizons and a series row") {
  const auto sq = write("sq.json", R"({"alphabet_size": 3, "adjacency": [[0,1,1],[1,1,1],[1,0,1]]})");
  const auto r = run({"topo", "--input", sq, "--n", "4,6", "--terms", "20"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[3].find(",series,") != std::string::npos);
  CHECK(run({"topo", "--input", sft_one(), "--terms", "20"}).code == 1);
}

TEST_CASE("markov family rows") {
  const auto r = run({"markov", "--family", "gms-1step", "--param", "0.618", "--terms", "20"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  CHECK(ls[0] == "P00,h_mu,asc_mu,int_mu,method,n_or_K,tail_bound,stderr,paper_rounded,provenance");
  CHECK(ls[1].find("h_mu=0.481;asc_mu=0.266;int_mu=0.051") != std::string::npos);
  CHECK(ls[1].find("ref:markov-gms1/1") != std::string::npos);
}

TEST_CASE("markov Monte Carlo rows are deterministic and need a seed") {
  const std::vector<std::string> args{"markov", "--family", "gms-1step", "--param", "0.618", "--samples", "300",
                                      "--seed", "5", "--n", "8"};
  const auto a = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == run(args).out);
  CHECK(a.out.find(",mc,") != std::string::npos);
  CHECK(run({"markov", "--family", "gms-1step", "--param", "0.618", "--samples", "10"}).code == 1);
}

TEST_CASE("markov input file") {
  const auto m = write("m.json", R"({"block_len": 1, "P": [[0.5, 0.5], [0.5, 0.5]]})");
  const auto r = run({"markov", "--input", m, "--n", "4"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out)[0].rfind("h_mu,", 0) == 0);
  CHECK(lines(r.out).size() == 3);
}

TEST_CASE("pressure") {
  const auto sft = write("p2.json", R"({"alphabet_size": 3, "adjacency": [[1,1,0],[0,0,1],[1,1,1]]})");
  const auto f = write("f.json", R"({"values": {"0": 0, "1": 1, "2": 0}})");
  const auto r = run({"pressure", "--input", sft, "--potential", f, "--n", "10"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("Asp_n=0.633") != std::string::npos);
  CHECK(r.out.find("ref:pressure/2/f2") != std::string::npos);
}

TEST_CASE("sweep writes the surface and prints the summary") {
  const auto surface = (scratch() / "surface.csv").string();
  const auto r = run({"sweep", "--family", "gms-1step", "--objective", "asc", "--step", "0.01", "--output", surface});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() >= 2);
  CHECK(ls[1].rfind("best,asc,0.53", 0) == 0);
  CHECK(ls[1].find("P00=0.533;value=0.271") != std::string::npos);
  std::ifstream in(surface);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(lines(buf.str()).size() == 102);
}

TEST_CASE("json output mirrors csv") {
  const auto r = run({"markov", "--family", "full2-1step", "--param", "0.5", "--param", "0.5", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["method"] == "series");
  CHECK(j[0]["P11"].get<double>() == 0.5);
  CHECK(j[0]["stderr"].is_null());
}

TEST_CASE("check subcommand") {
  const auto r = run({"check", "--suite", "coeffs"});
  CHECK(r.code == 0);
  CHECK(r.out.find(",pass,") != std::string::npos);
  CHECK(run({"check", "--suite", "nope"}).code == 1);
}

TEST_CASE("usage errors and caps") {
  CHECK(run({}).code == 1);
  CHECK(run({"topo"}).code == 1);
  CHECK(run({"topo", "--input", "/nonexistent.json"}).code == 1);
  CHECK(run({"topo", "--input", sft_one(), "--n", "40"}).code == 2);
  CHECK(run({"topo", "--input", sft_one(), "--coeffs", "weird"}).code == 1);
  CHECK(run({"markov", "--family", "gms-1step", "--param", "1.5"}).code == 1);
  CHECK(run({"sweep", "--family", "gms-1step", "--step", "0.5"}).code == 1);
  CHECK(run({"topo", "--input", sft_one(), "--format", "xml"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("binary honours the cache directory and is byte-deterministic") {
  const auto cache = scratch() / "cache";
  const auto sq = write("sq2.json", R"({"alphabet_size": 3, "adjacency": [[0,1,1],[1,1,1],[1,1,0]]})");
  auto invoke = [&](const std::string& out) {
    const std::string cmd = "INTRICACY_CACHE_DIR='" + cache.string() + "' '" INTRICACY_CLI "' topo --input '" + sq +
                            "' --n 8,9 --output '" + out + "'";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const auto a = (scratch() / "a.csv").string();
  const auto b = (scratch() / "b.csv").string();
  REQUIRE(invoke(a) == 0);
  REQUIRE(fs::exists(cache));
  CHECK(!fs::is_empty(cache));
  REQUIRE(invoke(b) == 0);
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(!sa.str().empty());

  const std::string bad = "'" INTRICACY_CLI "' topo --input /nonexistent.json 2>/dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 1);
}
