// Command-line shell over the library: classification, structures, normal
// forms, orbit-geometry tables, witnesses, and the seeded orbit sampler.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "multisym/multisym.hpp"

namespace {

using namespace multisym;

struct InputFile {
  std::string path;
  std::string bytes;
  FormFile parsed;
};

InputFile load_form(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  InputFile f;
  f.path = path;
  f.bytes = buf.str();
  std::istringstream is(f.bytes);
  f.parsed = parse_3form(is);
  return f;
}

KForm load_theta(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_theta(in);
}

void attach_input(Json& report, const InputFile& f) {
  Json in;
  in["path"] = f.path;
  in["digest"] = input_digest(f.bytes);
  report["input"] = in;
}

OrbitType parse_orbit_tag(const std::string& tag) {
  if (tag == "product") return OrbitType::Product;
  if (tag == "complex") return OrbitType::Complex;
  if (tag == "tangent") return OrbitType::Tangent;
  throw PreconditionError("unknown orbit tag '" + tag + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"exact classification of multisymplectic 3-forms on a 6-space"};
  app.require_subcommand(1);
  app.fallthrough();

  bool plain = false, json = false;
  CLI::Option* json_opt = app.add_flag("--json", json, "JSON output (the default)");
  app.add_flag("--plain", plain, "plain text output instead of JSON")->excludes(json_opt);
  std::string theta_path;
  app.add_option("--theta", theta_path, "override the 6-form (single term file)");
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "worker threads for batch items");

  std::string file;
  auto add_file_cmd = [&](const char* name, const char* desc) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->add_option("file", file, "3-form file")->required();
    return c;
  };
  CLI::App* cmd_classify = add_file_cmd("classify", "orbit of a 3-form");
  CLI::App* cmd_structure = add_file_cmd("structure", "normalized S, J, or F");
  CLI::App* cmd_normal = add_file_cmd("normal-form", "change-of-basis certificate");
  CLI::App* cmd_delta2 = add_file_cmd("delta2", "decomposable-contraction locus");
  CLI::App* cmd_orbit = add_file_cmd("orbit-report", "orbit geometry at the point");
  add_file_cmd("witness", "non-integrability witness pair");

  std::string which;
  CLI::App* cmd_tables = app.add_subcommand("tables", "published coefficient tables");
  cmd_tables->add_option("--which", which, "product or complex")->required();

  std::string orbit_tag, out_dir;
  uint64_t seed = 0;
  size_t count = 1;
  CLI::App* cmd_sample = app.add_subcommand("sample", "seeded orbit samples");
  cmd_sample->add_option("--orbit", orbit_tag, "product|complex|tangent")->required();
  cmd_sample->add_option("--seed", seed, "seed")->required();
  cmd_sample->add_option("--count", count, "number of samples")->required();
  cmd_sample->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 1;
  }

  KForm theta = theta_path.empty() ? theta6() : load_theta(theta_path);

  Json report;
  if (app.got_subcommand(cmd_sample)) {
    OrbitType orbit = parse_orbit_tag(orbit_tag);
    std::vector<KForm> forms = sample_orbit(orbit, seed, count, jobs);
    std::filesystem::create_directories(out_dir);
    Json files = Json::array();
    std::vector<std::string> tags(count);
    parallel_for(count, jobs, [&](size_t i) { tags[i] = orbit_name(orbit_type(forms[i])); });
    for (size_t i = 0; i < count; ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "sample_%04zu.form", i);
      std::filesystem::path p = std::filesystem::path(out_dir) / name;
      std::ofstream out(p, std::ios::binary);
      out << emit_form_text(forms[i], std::string(orbit_name(orbit)) + " sample seed=" +
                                          std::to_string(seed) + " item=" + std::to_string(i));
      Json item;
      item["path"] = p.string();
      item["orbit"] = tags[i];
      files.push_back(item);
    }
    report["command"] = "sample";
    report["tool"] = tool_section();
    report["orbit"] = orbit_tag;
    report["seed"] = seed;
    report["count"] = count;
    report["files"] = files;
  } else if (app.got_subcommand(cmd_tables)) {
    report = tables_report(which);
  } else {
    InputFile input = load_form(file);
    const KForm& w = input.parsed.form;
    if (app.got_subcommand(cmd_classify)) {
      report = classify_report(w, theta);
    } else if (app.got_subcommand(cmd_structure)) {
      report = structure_report(w, theta);
    } else if (app.got_subcommand(cmd_normal)) {
      report = normal_form_report(w);
    } else if (app.got_subcommand(cmd_delta2)) {
      report = delta2_report(w, theta);
    } else if (app.got_subcommand(cmd_orbit)) {
      report = orbit_report(w);
    } else {
      report = witness_report(w);
    }
    attach_input(report, input);
  }
  std::cout << render(report, plain);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const multisym::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const multisym::InternalInvariantError& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const multisym::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
