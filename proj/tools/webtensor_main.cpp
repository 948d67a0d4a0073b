#include <CLI11.hpp>

#include "webtensor/checks.hpp"
#include "webtensor/manifest.hpp"
#include "webtensor/report.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Exact structure-tensor calculator for section-induced local loops"};
  app.get_formatter()->column_width(34);

  std::string command;
  std::string manifest_path;
  bool strict_paper = false;
  std::string format = "human";

  app.add_option("command", command,
                 "validate | expand | tensors | identities | hexagonal | oracle-check")
      ->required();
  app.add_option("manifest", manifest_path, "manifest file path")->required();
  app.add_flag("--strict-paper", strict_paper, "escalate erratum records to failures");
  app.add_option("--format", format, "human | records")
      ->check(CLI::IsMember({"human", "records"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0; bad invocation is an input error
  }

  if (!webtensor::known_command(command)) {
    std::cerr << "error: unknown command '" << command << "'\n";
    return 2;
  }

  try {
    webtensor::Manifest manifest = webtensor::load_manifest_file(manifest_path);
    webtensor::Instance inst = webtensor::build_instance(manifest);
    webtensor::Report report = webtensor::run_command(command, inst);
    if (format == "records")
      webtensor::render_records(report, std::cout, strict_paper);
    else
      webtensor::render_human(report, std::cout, strict_paper);
    return report.exit_code(strict_paper);
  } catch (const webtensor::ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
