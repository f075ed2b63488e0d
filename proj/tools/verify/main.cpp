// Standalone certificate checker: reads certificate JSON files and replays them.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sfw/error.hpp"
#include "sfw/json_io.hpp"
#include "sfw/pairs.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Replays certificates emitted by sfw; exit 0 iff every certificate is accepted."};
  std::vector<std::string> files;
  bool quiet = false;
  app.add_option("certificates", files, "Certificate JSON files")->required()->check(CLI::ExistingFile);
  app.add_flag("-q,--quiet", quiet, "Only set the exit status");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  bool all = true;
  for (const auto& f : files) {
    sfw::pairs::Certificate c;
    try {
      std::ifstream in(f);
      c = sfw::io::certificate_from_json(sfw::io::json::parse(in));
    } catch (const std::exception& e) {
      std::cerr << f << ": " << e.what() << "\n";
      return 2;
    }
    auto r = sfw::pairs::verify_certificate(c);
    all = all && r.accepted;
    if (quiet) continue;
    std::cout << f << ": " << (r.accepted ? "accepted" : "REJECTED") << " (" << sfw::pairs::kind_str(c.kind)
              << ", length " << c.length.str() << ")\n";
    for (const auto& why : r.failures) std::cout << "  " << why << "\n";
  }
  return all ? 0 : 1;
}
