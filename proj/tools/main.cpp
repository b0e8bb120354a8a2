#include <CLI11.hpp>

#include "decaycert/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"decay certificates and simulation for delay systems"};
  app.require_subcommand(1);

  decaycert::RunConfig rc;
  for (const char* name : {"certify", "simulate", "verify", "attractor",
                           "halanay", "sectorial", "oracle", "demo"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", rc.input_path, "configuration file")
        ->required();
    sub->add_option("--out", rc.output_dir, "output directory");
    sub->add_option("--seed", rc.seed, "random seed (default 42)");
    sub->add_option("--set", rc.overrides,
                    "override section.key=value (repeatable)");
    sub->callback([&rc, name] { rc.command = name; });
  }

  CLI11_PARSE(app, argc, argv);
  return decaycert::run(rc);
}
