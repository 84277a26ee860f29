#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace na = newton_atlas;

namespace {

struct SpecFlags {
  std::string roots, poles, num, den;
};

void add_spec_flags(CLI::App* cmd, SpecFlags& f) {
  cmd->add_option("--roots", f.roots, "roots of R: \"re,im[:mult];...\"");
  cmd->add_option("--poles", f.poles, "poles of R: \"re,im[:mult];...\"");
  cmd->add_option("--num", f.num, "raw numerator, ascending coefficients");
  cmd->add_option("--den", f.den, "raw denominator, ascending coefficients (default 1)");
}

na::FunctionSpec make_spec(const SpecFlags& f) {
  const bool raw = !f.num.empty() || !f.den.empty();
  if (raw) {
    if (!f.roots.empty() || !f.poles.empty())
      throw na::Error(na::ErrorKind::InvalidArgument, "give either --roots/--poles or --num/--den");
    if (f.num.empty()) throw na::Error(na::ErrorKind::InvalidArgument, "--num is required with --den");
    na::RawSpec s;
    s.num = na::parse_coefficients(f.num, "--num");
    if (!f.den.empty()) s.den = na::parse_coefficients(f.den, "--den");
    return s;
  }
  if (f.roots.empty() && f.poles.empty())
    throw na::Error(na::ErrorKind::InvalidArgument, "no function given (use --roots/--poles or --num/--den)");
  return na::FactoredSpec{na::parse_factor_list(f.roots, "--roots"), na::parse_factor_list(f.poles, "--poles")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton maps of rational functions: fixed points, conjugacy classes, basin images"};
  app.require_subcommand(1);

  SpecFlags analyze_flags, classify_flags, characterize_flags, render_flags;
  auto* analyze = app.add_subcommand("analyze", "fixed points, indices and critical orbits");
  add_spec_flags(analyze, analyze_flags);
  auto* classify = app.add_subcommand("classify", "conjugacy class of a quadratic or cubic Newton map");
  add_spec_flags(classify, classify_flags);
  auto* characterize = app.add_subcommand("characterize", "decide whether a raw map is a Newton map");
  add_spec_flags(characterize, characterize_flags);
  auto* render = app.add_subcommand("render", "basin-of-attraction image (binary PPM)");
  add_spec_flags(render, render_flags);
  std::string viewport = "0,0,4,4", size = "256x256";
  na::cli::RenderOptions opt;
  render->add_option("--viewport", viewport, "cx,cy,width,height")->capture_default_str();
  render->add_option("--size", size, "WxH pixels")->capture_default_str();
  render->add_option("--out", opt.out, "output .ppm path")->required();
  render->add_option("--max-iter", opt.max_iter, "iteration cap per pixel")->capture_default_str();
  render->add_option("--eps", opt.eps, "capture radius")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : na::cli::kValidation;
  }

  try {
    na::report::Json out;
    if (analyze->parsed()) {
      out = na::cli::run_analyze(make_spec(analyze_flags));
    } else if (classify->parsed()) {
      out = na::cli::run_classify(make_spec(classify_flags));
    } else if (characterize->parsed()) {
      out = na::cli::run_characterize(make_spec(characterize_flags));
    } else {
      if (opt.max_iter < 1) throw na::Error(na::ErrorKind::InvalidArgument, "--max-iter must be >= 1");
      if (!(opt.eps > 0.0)) throw na::Error(na::ErrorKind::InvalidArgument, "--eps must be positive");
      opt.viewport = na::cli::parse_size(size, na::cli::parse_viewport(viewport, opt.viewport));
      opt.threads = na::cli::render_threads();
      out = na::cli::run_render(make_spec(render_flags), opt);
    }
    std::cout << out.dump(2) << '\n';
    return na::cli::kOk;
  } catch (const na::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return na::cli::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return na::cli::kInternal;
  }
}
