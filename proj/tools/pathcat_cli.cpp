#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pathcat/commands.hpp"

namespace {

const std::map<std::string, std::string> kDescriptions = {
    {"validate", "check every block of a spec file"},
    {"path", "build a path 2-category and run a structure check"},
    {"segal-check", "check locality of a path object over its base"},
    {"roundtrip", "enrichment round trip on a metric or path object"},
    {"monoid", "path-monoid correspondence and graded views"},
    {"simplicial", "simplicial truncation round trip for a one-object base"},
    {"bridge", "distributor / collage round trip and thin terminality"},
    {"bimodule", "two-sided module over a declared bridge"},
    {"localize", "fraction, product, curried and hom-wise localization"},
    {"reduce", "invert coherence cells of a point"},
    {"report", "full validation report with optional cocycle transport"},
};

const std::map<std::string, std::vector<std::string>> kOptions = {
    {"validate", {"spec"}},
    {"path", {"spec", "category", "check", "with", "functor"}},
    {"segal-check", {"pathobject", "name", "base"}},
    {"roundtrip", {"enriched"}},
    {"monoid", {"spec", "category", "pathobject"}},
    {"simplicial", {"spec", "category"}},
    {"bridge", {"spec", "name"}},
    {"bimodule",
     {"spec", "left", "right", "total", "psi", "leftpoint", "rightpoint"}},
    {"localize",
     {"spec", "category", "invert", "targets", "product", "pinvert", "curry",
      "bicategory", "base"}},
    {"reduce", {"spec"}},
    {"report", {"spec", "transport"}},
};

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"finite 2-categorical verification toolkit"};
  int default_maxlen = 4;
  if (const char *env = std::getenv("PATHCAT_MAX_LEN")) {
    int v = std::atoi(env);
    if (v > 0) default_maxlen = v;
  }

  int exitcode = 0;
  for (const pathcat::Id &name : pathcat::command_names()) {
    CLI::App *sub = app.add_subcommand(name, kDescriptions.at(name));
    auto store = std::make_shared<std::map<pathcat::Id, std::string>>();
    for (const std::string &o : kOptions.at(name))
      sub->add_option_function<std::string>(
          "--" + o,
          [store, o](const std::string &v) { (*store)[o] = v; });
    auto ml = std::make_shared<int>(default_maxlen);
    sub->add_option("--max-len", *ml, "truncation length (default 4)");
    sub->callback([&exitcode, store, ml, name]() {
      pathcat::CommandRequest req{name, *store, *ml};
      pathcat::Report rep = pathcat::run_command(req);
      std::cout << rep.render();
      exitcode = rep.exit_code();
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cout << "FAIL UnknownCommand cli " << e.what() << "\n";
    return 2;
  } catch (const pathcat::Error &e) {
    std::cout << "FAIL " << e.code() << " " << e.location();
    if (!e.detail().empty()) std::cout << " " << e.detail();
    std::cout << "\n";
    return 2;
  }
  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    std::cout << "FAIL MissingArgument command\n";
    return 2;
  }
  return exitcode;
}
