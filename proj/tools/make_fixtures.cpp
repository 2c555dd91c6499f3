#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "fixture_corpus.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write a synthetic WFDB fixture corpus (records + index.csv)"};
  std::string out_dir = "fixtures";
  ecgen::tools::CorpusOptions options;
  app.add_option("--out", out_dir, "Corpus directory")->capture_default_str();
  app.add_option("--count", options.count, "Record count")->capture_default_str();
  app.add_option("--seed", options.seed, "Corpus seed")->capture_default_str();
  app.add_flag("--with-rejects", [&options](std::int64_t) { options.all_clean = false; },
               "Give every 12th record a rejectable noise grade");
  std::string kinds;
  app.add_option("--kinds", kinds,
                 "Comma list of signal kinds to cycle (default: all three)");
  CLI11_PARSE(app, argc, argv);

  if (!kinds.empty()) {
    options.kinds.clear();
    std::string token;
    for (std::size_t i = 0; i <= kinds.size(); ++i) {
      if (i == kinds.size() || kinds[i] == ',') {
        if (!token.empty()) {
          try {
            options.kinds.push_back(ecgen::validate::fixture_kind_from_name(token));
          } catch (const std::exception& err) {
            std::fprintf(stderr, "error: %s\n", err.what());
            return 1;
          }
        }
        token.clear();
      } else {
        token += kinds[i];
      }
    }
  }

  try {
    const std::filesystem::path index = ecgen::tools::write_fixture_corpus(out_dir, options);
    std::printf("wrote %lld records under %s\nindex: %s\n",
                static_cast<long long>(options.count), out_dir.c_str(),
                index.string().c_str());
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
