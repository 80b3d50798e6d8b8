#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qframes::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  return nlohmann::json::parse(run(args).out);
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("ks reports UNSAT for the 18-ray set") {
  const auto r = run({"--format", "json", "ks", "catalog:cabello18"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["outcome"] == "UNSAT");
  CHECK(j["results"]["parity"]["applies"] == true);
  CHECK(j["exit_code"] == 0);
  CHECK(j["inputs"][0]["kind"] == "rays");
}

TEST_CASE("ks exit codes") {
  CHECK(run({"ks", "catalog:cabello18", "--expect", "sat"}).code == 1);
  CHECK(run({"ks", "catalog:cabello18", "--expect", "unsat"}).code == 0);
  CHECK(run({"ks", "catalog:twobases3", "--all", "--cap", "2"}).code == 3);
  CHECK(run({"ks", "catalog:peres33", "--max-nodes", "2"}).code == 3);
  CHECK(json_of({"ks", "catalog:twobases3", "--all"})["results"]["count"] == 5);
  CHECK(json_of({"ks", "catalog:mo2", "--all"})["results"]["count"] == 4);
}

TEST_CASE("validate prints the O6 witness and fails") {
  const auto r = run({"validate", "catalog:o6"});
  CHECK(r.code == 1);
  CHECK(r.out.find("(a, b)") != std::string::npos);
  CHECK(run({"validate", "catalog:mo3"}).code == 0);
}

TEST_CASE("reconstruct and paste") {
  const auto r = run({"reconstruct", "catalog:mo2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("result: isomorphic") != std::string::npos);
  CHECK(run({"paste", "catalog:twoblocks"}).code == 0);
  CHECK(run({"paste", "catalog:cabello18"}).code == 1);
}

TEST_CASE("frames, blocks, glue and adjoint") {
  CHECK(json_of({"frames", "catalog:mo2", "--probe", "8"})["results"]["count"] == 15);
  CHECK(run({"blocks", "catalog:mo2"}).code == 0);
  CHECK(run({"glue", "catalog:twoblocks"}).code == 0);
  CHECK(run({"adjoint", "catalog:mo2", "--probe", "rep:4"}).code == 0);
  CHECK(run({"adjoint", "catalog:b8"}).code == 0);
}

TEST_CASE("input errors exit 2 with a located message") {
  const auto bad = temp_file("qframes_bad_rays.txt", "dim 3\nray a = (1,0,0)\nray b = (0,x,0)\n");
  const auto r = run({"ks", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(run({"ks", "catalog:nope"}).code == 2);
  CHECK(run({"ks", "/nonexistent/file.txt"}).code == 2);
  CHECK(run({"validate", "catalog:cabello18"}).code != 0);
  const auto j = json_of({"ks", bad});
  CHECK(j["exit_code"] == 2);
  CHECK(j.contains("error"));
}

TEST_CASE("files on disk work like catalog entries") {
  const auto path = temp_file("qframes_mo2.txt", "atoms a a' b b'\nblock a a'\nblock b b'\n");
  CHECK(run({"reconstruct", path}).code == 0);
  CHECK(json_of({"ks", path, "--all"})["results"]["count"] == 4);
}

TEST_CASE("output is byte-identical across runs") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--format", "json", "ks", "catalog:twobases3", "--all"},
           {"--format", "json", "glue", "catalog:mo3"},
           {"adjoint", "catalog:twoblocks"},
           {"--format", "json", "reconstruct", "catalog:twoblocks"}}) {
    CHECK(run(args).out == run(args).out);
  }
}

TEST_CASE("catalog and version") {
  const auto list = run({"catalog", "list"});
  CHECK(list.code == 0);
  CHECK(list.out.find("peres33") != std::string::npos);
  const auto show = run({"catalog", "show", "b8"});
  CHECK(show.out.find("block p q r") != std::string::npos);
  CHECK(run({"catalog", "show", "nope"}).code == 2);
  CHECK(run({"--version"}).out.find("0.1.0") != std::string::npos);
}
