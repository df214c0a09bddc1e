#include <algorithm>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "selftest.hpp"

#ifndef MORD_FIXTURES_DIR
#define MORD_FIXTURES_DIR "fixtures"
#endif

namespace {

using namespace mord;
using cli::json;

// Pretty JSON with arrays of scalars kept on one line.
void write_json(std::ostream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' '), close(static_cast<std::size_t>(indent), ' ');
  const bool flat = j.is_array() && std::none_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); });
  if (!j.is_structured() || j.empty() || flat) {
    os << j.dump();
    return;
  }
  os << (j.is_object() ? "{\n" : "[\n");
  std::size_t i = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++i) {
    os << pad;
    if (j.is_object()) os << json(it.key()).dump() << ": ";
    write_json(os, *it, indent + 2);
    os << (i + 1 < j.size() ? ",\n" : "\n");
  }
  os << close << (j.is_object() ? "}" : "]");
}

void emit(const json& doc, const std::string& format, const std::string& out) {
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) {
      std::cerr << "cannot write " << out << "\n";
      std::exit(1);
    }
  }
  std::ostream& os = out.empty() ? std::cout : file;
  if (format == "text") {
    cli::render_text(os, doc);
  }
  else {
    write_json(os, doc, 0);
    os << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximal orders, certificates and Serre tensor constructions"};
  app.require_subcommand(1);
  app.fallthrough();
  cli::Options opt;
  std::string format = "json", output, fixtures = MORD_FIXTURES_DIR;
  app.add_option("--primes", opt.primes, "extra candidate primes, e.g. \"2,3\" or \"t,t+1\"");
  app.add_option("--idempotents-file", opt.idempotents_file, "central idempotents to split the algebra with")->check(CLI::ExistingFile);
  app.add_option("--seed", opt.seed, "seed for randomized steps");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--output", output, "write the result here instead of stdout");
  app.add_flag("--trust-semisimple", opt.trust_semisimple, "skip the trace form semisimplicity check");

  std::string input;
  for (const auto& name : cli::commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("input", input, "input document (JSON)")->required()->check(CLI::ExistingFile);
  }
  auto* st = app.add_subcommand("selftest", "run the fixture files, the quadratic oracle sweep and a seeded property run");
  st->add_option("--fixtures", fixtures, "fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  cli::Result r;
  if (cmd == "selftest") {
    r = cli::selftest(fixtures, opt.seed);
  } else {
    try {
      const std::filesystem::path p = input;
      r = cli::run_safely(cmd, io::read_file(p), p.parent_path(), opt);
    } catch (const error& e) {
      r = {1, cli::error_json(e)};
    }
  }
  emit(r.doc, format, output);
  return r.exit;
}
