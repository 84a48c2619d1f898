#include "gpa/io/run.hpp"

#include <fstream>
#include <sstream>

#include "gpa/analysis/runner.hpp"
#include "gpa/error.hpp"
#include "gpa/io/csv.hpp"
#include "gpa/lang/parser.hpp"
#include "gpa/lang/validator.hpp"

namespace gpa::io {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void report(std::ostream& err, const fs::path& input, const std::exception& e) {
  bool positioned = false;
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) positioned = p->line() > 0;
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) positioned = v->line() > 0;
  err << "error: ";
  if (positioned) err << input.string() << ":";
  err << e.what() << '\n';
}

lang::ValidatedModel load(const fs::path& input) {
  return lang::validate(lang::parse_model(read_file(input)));
}

}  // namespace

int run_file(const RunConfig& cfg, std::ostream& out, std::ostream& err,
             std::vector<fs::path>* written) {
  try {
    lang::ValidatedModel model = load(cfg.input);
    analysis::ModelContext ctx(model);
    if (cfg.dump_classes) out << semantics::dump_classes(ctx.classes(), ctx.index());

    analysis::RunOptions options;
    options.variance_method = cfg.variance_method;
    options.seed = cfg.seed;
    options.threads = cfg.threads;
    options.sim_switchpoints = cfg.sim_switchpoints;
    options.dump_odes = cfg.dump_odes ? &out : nullptr;

    const auto& blocks = model.analyses();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      for (const auto& result : analysis::run_analysis(ctx, blocks[i], options, i + 1)) {
        fs::path target = result.command->redirect ? cfg.out_dir / *result.command->redirect
                                                    : cfg.out_dir / (result.name + ".csv");
        {
          std::ofstream file = open_output(target);
          write_csv(file, result.times, result.columns);
          if (!file) throw Error("failed writing " + target.string());
        }
        if (written) written->push_back(target);
        if (result.crossings) {
          fs::path sidecar = target;
          sidecar.replace_extension();
          sidecar += ".crossings.txt";
          std::ofstream file = open_output(sidecar);
          write_crossings(file, result.columns, *result.crossings);
          if (!file) throw Error("failed writing " + sidecar.string());
          if (written) written->push_back(sidecar);
        }
      }
    }
    return 0;
  } catch (const std::exception& e) {
    report(err, cfg.input, e);
    return 1;
  }
}

int check_file(const fs::path& input, std::ostream& out, std::ostream& err) {
  try {
    lang::ValidatedModel model = load(input);
    out << input.string() << ": ok (" << model.analyses().size() << " analyses)\n";
    return 0;
  } catch (const std::exception& e) {
    report(err, input, e);
    return 1;
  }
}

int gnuplot_file(const fs::path& csv, std::ostream& out, std::ostream& err) {
  try {
    std::ifstream in(csv);
    std::string header;
    if (!in || !std::getline(in, header)) throw Error("cannot read " + csv.string());
    out << gnuplot_script(csv.string(), split_csv_line(header));
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gpa::io
