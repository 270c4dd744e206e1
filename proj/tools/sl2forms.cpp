// Command-line driver: theorem sweeps, form constructors, classification.
//
//   sl2forms verify thm-b|thm-a|char2|lemmas [--n-max N] [--fields ...] [--json PATH]
//   sl2forms classify --form "<1,15>" --field Q
//   sl2forms form phi-even --n 16
//   sl2forms invariant-space --n 4 --field Fp:7
//
// Exit status: 0 all verified, 1 a case failed, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "sl2forms/char2.hpp"
#include "sl2forms/constructions.hpp"
#include "sl2forms/descent.hpp"
#include "sl2forms/field_descriptor.hpp"
#include "sl2forms/local_invariants.hpp"
#include "sl2forms/serialize.hpp"
#include "sl2forms/verifier.hpp"

using namespace sl2forms;

namespace {

constexpr int kUsageError = 2;

struct NamedArgs {
  std::string name;
  std::optional<std::uint64_t> n;
  std::optional<std::string> a, b;

  std::uint64_t need_n() const {
    if (!n) throw parse_error("form '" + name + "' needs --n");
    return *n;
  }
};

template <Field K>
QuaternionDescriptor<K> quaternion_args(const K& k, const NamedArgs& args, bool required) {
  if (!args.a || !args.b) {
    if (required) throw parse_error("form '" + args.name + "' needs --a and --b");
    return split_quaternion(k);
  }
  return {k.parse(*args.a), k.parse(*args.b)};
}

// A constructed form over a field of characteristic != 2.
template <Field K>
using Built = std::variant<DiagonalForm<K>, GramForm<K>>;

template <Field K>
Built<K> build_named(const K& k, const NamedArgs& args) {
  const auto& name = args.name;
  if (name == "phi-even") return phi_even(args.need_n(), k);
  if (name == "phi-odd") return phi_odd(args.need_n(), k);
  if (name == "weyl") return weyl_form_gram(args.need_n(), k);
  if (name == "thm-b-rhs") return theorem_b_rhs(args.need_n(), k);
  if (name == "thm-a-rhs") return theorem_a_rhs(args.need_n(), quaternion_args(k, args, false), k);
  if (name == "desc-summ") {
    if constexpr (requires { k.is_square(k.one()); })
      return desc_summ_form(args.need_n(), quaternion_args(k, args, true), k);
    else
      throw parse_error("form 'desc-summ' needs a square test over " + k.name());
  }
  if (name == "qnorm") return quaternion_norm(k, quaternion_args(k, args, true));
  if (name == "qprime") return quaternion_norm_prime(k, quaternion_args(k, args, true));
  if (name == "twisted") {
    if constexpr (std::is_same_v<K, RationalField>) {
      const auto q = quaternion_args(k, args, true);
      return twisted_form(args.need_n(), q.a, q.b);
    } else {
      throw parse_error("form 'twisted' is computed over Q (or F2e) only");
    }
  }
  throw parse_error("unknown form '" + name + "'");
}

// Quadratic forms over F_{2^e}; phi-even/phi-odd report their mod-2 data.
std::variant<QFormChar2<BinaryField>, Json> build_named_char2(const BinaryField& k,
                                                               const NamedArgs& args) {
  const auto& name = args.name;
  if (name == "weyl") return weyl_qform_char2(args.need_n(), k);
  if (name == "phi-even" || name == "phi-odd") {
    const auto d = phi_forms_char2(args.need_n());
    return Json{{"rank_even", d.rank_even}, {"odd_is_zero", d.odd_is_zero}};
  }
  if (!args.a || !args.b) throw parse_error("form '" + name + "' needs --a and --b");
  const Bits a = k.parse(*args.a), b = k.parse(*args.b);
  if (name == "qprime") {
    auto q = quaternion_char2_qprime(a, b, k);
    if (q.split_extension) std::cerr << "warning: Tr(a) = 0, the extension k[alpha] splits\n";
    return std::move(q.form);
  }
  if (name == "twisted") return twisted_form_char2(args.need_n(), a, b, k);
  throw parse_error("form '" + name + "' is not available over " + k.name());
}

template <Field K>
std::string render(const Built<K>& f) {
  if (const auto* d = std::get_if<DiagonalForm<K>>(&f)) return to_string(*d);
  return to_json(std::get<GramForm<K>>(f)).dump();
}

template <Field K>
Json classify_built(const Built<K>& f) {
  if constexpr (std::is_same_v<K, RationalField> || std::is_same_v<K, PrimeField>) {
    return std::visit([](const auto& g) { return to_json(invariant_record(g)); }, f);
  } else {
    throw parse_error("classification over " + std::visit([](const auto& g) {
      if constexpr (requires { g.field.name(); }) return g.field.name();
      else return g.field().name();
    }, f) + " is not supported");
  }
}

template <Field K>
Built<K> parse_form_text(const K& k, const std::string& text) {
  if (!text.empty() && text.front() == '<') return parse_diagonal_form(k, text);
  const auto j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("form is neither <...> nor a JSON matrix: '" + text + "'");
  try {
    return GramForm<K>(k, matrix_from_json(k, j));
  } catch (const domain_error& e) {
    throw parse_error(e.what());
  }
}

QFormChar2<BinaryField> parse_qform_text(const BinaryField& k, const std::string& text) {
  if (!text.empty() && text.front() == '<') {
    const auto d = parse_diagonal_form(k, text);
    return QFormChar2<BinaryField>(k, zero_matrix(k, d.dim(), d.dim()), d.entries);
  }
  const auto j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("quadratic form must be <...> or {\"polar\",\"values\"}");
  return qform_from_json(k, j);
}

bool is_named(const std::string& form) {
  return !form.empty() && form.front() != '<' && form.front() != '[' && form.front() != '{';
}

int run_form(const std::string& field_text, const NamedArgs& args) {
  const auto field = parse_field(field_text);
  return std::visit([&](const auto& k) {
    using K = std::decay_t<decltype(k)>;
    if constexpr (std::is_same_v<K, BinaryField>) {
      const auto built = build_named_char2(k, args);
      if (const auto* q = std::get_if<QFormChar2<BinaryField>>(&built)) std::cout << to_json(*q).dump() << "\n";
      else std::cout << std::get<Json>(built).dump() << "\n";
    } else {
      std::cout << render<K>(build_named(k, args)) << "\n";
    }
    return 0;
  }, field);
}

int run_classify(const std::string& field_text, const std::string& form, NamedArgs args) {
  const auto field = parse_field(field_text);
  return std::visit([&](const auto& k) {
    using K = std::decay_t<decltype(k)>;
    if constexpr (std::is_same_v<K, BinaryField>) {
      QFormChar2<BinaryField> q = [&] {
        if (!is_named(form)) return parse_qform_text(k, form);
        args.name = form;
        auto built = build_named_char2(k, args);
        if (!std::holds_alternative<QFormChar2<BinaryField>>(built))
          throw parse_error("'" + form + "' is not a quadratic form over " + k.name());
        return std::get<QFormChar2<BinaryField>>(built);
      }();
      Json j = to_json(classify(q));
      j = Json{{"field", k.name()}, {"dim", q.dim()}, {"class", j}};
      std::cout << j.dump() << "\n";
    } else {
      Built<K> f = [&] {
        if (!is_named(form)) return parse_form_text(k, form);
        args.name = form;
        return build_named(k, args);
      }();
      std::cout << classify_built<K>(f).dump() << "\n";
    }
    return 0;
  }, field);
}

template <Field K>
std::vector<typename K::value_type> parse_sample(const K& k, const std::string& text) {
  std::vector<typename K::value_type> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    out.push_back(k.parse(text.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

int run_invariant_space(std::uint64_t n, const std::string& field_text,
                        const std::optional<std::string>& sample_text, bool generic) {
  const auto field = parse_field(field_text);
  const auto mode = generic ? InvarianceMode::Generic : InvarianceMode::Sampled;
  return std::visit([&](const auto& k) {
    using K = std::decay_t<decltype(k)>;
    std::vector<typename K::value_type> sample;
    if (sample_text) sample = parse_sample(k, *sample_text);
    else if constexpr (std::is_same_v<K, RationalField>) sample = small_rationals();
    else if constexpr (requires { k.size(); }) sample = all_elements(k);
    else throw parse_error("invariant-space over " + k.name() + " needs --sample");
    Json j = {{"n", n}, {"field", k.name()}, {"mode", generic ? "generic" : "sampled"}};
    if constexpr (std::is_same_v<K, BinaryField>) {
      j["kind"] = "quadratic";
      j["dimension"] = invariant_qform_space_char2(n, k, sample, mode);
    } else {
      const auto space = invariant_form_space(n, k, sample, mode);
      j["kind"] = "bilinear";
      j["dimension"] = space.dimension;
      Json basis = Json::array();
      for (const auto& b : space.basis) basis.push_back(matrix_to_json(k, b));
      j["basis"] = basis;
    }
    std::cout << j.dump() << "\n";
    return 0;
  }, field);
}

void print_report(const VerificationReport& r, bool verbose) {
  for (const auto& c : r.cases)
    if (verbose || !c.pass)
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << (c.note.empty() ? "" : "  (" + c.note + ")")
                << "\n";
  std::cout << r.command << ": " << r.passes() << "/" << r.cases.size() << " cases passed, "
            << r.failures() << " failed\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of invariant bilinear and quadratic forms on SL_2 Weyl modules"};
  app.require_subcommand(1);
  // Config files are only read at the top level; keys go under [verify].
  app.set_config("--config", "", "TOML-style file of verify options under [verify] (flags win)");
  app.allow_config_extras(CLI::config_extras_mode::error);

  // verify
  auto* verify = app.add_subcommand("verify", "Run a theorem sweep");
  verify->fallthrough();
  std::string which;
  SweepConfig cfg;
  std::string fields, quaternions, json_path;
  bool verbose = false;
  verify->add_option("theorem", which, "thm-b, thm-a, char2 or lemmas")
      ->required()
      ->check(CLI::IsMember({"thm-b", "thm-a", "char2", "lemmas"}));
  verify->add_option("--n-max", cfg.n_max, "Largest n (default depends on the sweep)");
  verify->add_option("--split-n-max", cfg.split_n_max, "Largest n for split Theorem A");
  verify->add_option("--fields", fields, "Comma list, e.g. Q,Fp:3..97,F2e:1..3");
  verify->add_option("--quaternions", quaternions, "Pairs a,b separated by ';'");
  verify->add_option("--parity-n-max", cfg.parity_n_max, "Largest n for the parity-count lemma");
  verify->add_option("--p-max", cfg.p_max, "Largest prime for the lemma sweeps");
  verify->add_option("--a-count", cfg.char2_a_count, "Trace-one values of a per field (char2)");
  verify->add_option("--b-count", cfg.char2_b_count, "Nonzero values of b per field (char2)");
  verify->add_option("--seed", cfg.seed, "Seed for random SL_2 spot checks");
  verify->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--json", json_path, "Write the JSON report here ('-' for stdout)");
  verify->add_flag("--verbose", verbose, "List passing cases too");

  // classify
  auto* cls = app.add_subcommand("classify", "Print the invariant record of a form");
  std::string form_text, field_text = "Q";
  NamedArgs named;
  cls->add_option("--form", form_text, "<a,b,...>, a JSON Gram matrix, or a form name")->required();
  cls->add_option("--field", field_text, "Q, Fp:p, F2e:e, QSqrt:a");
  cls->add_option("--n", named.n, "n for named forms");
  cls->add_option("--a", named.a, "Quaternion parameter a");
  cls->add_option("--b", named.b, "Quaternion parameter b");

  // form
  auto* form = app.add_subcommand("form", "Print a named form");
  std::string form_field = "Q";
  NamedArgs form_args;
  form->add_option("name", form_args.name,
                   "phi-even, phi-odd, weyl, thm-a-rhs, thm-b-rhs, desc-summ, twisted, qnorm, qprime")
      ->required();
  form->add_option("--n", form_args.n, "n");
  form->add_option("--a", form_args.a, "Quaternion parameter a");
  form->add_option("--b", form_args.b, "Quaternion parameter b");
  form->add_option("--field", form_field, "Q, Fp:p, F2e:e, QSqrt:a");

  // invariant-space
  auto* space = app.add_subcommand("invariant-space", "Dimension of the space of invariant forms");
  std::uint64_t space_n = 0;
  std::string space_field = "Q";
  std::optional<std::string> sample;
  bool generic = false;
  space->add_option("--n", space_n, "n (even)")->required();
  space->add_option("--field", space_field, "Q, Fp:p, F2e:e");
  space->add_option("--sample", sample, "Comma list of parameters t");
  space->add_flag("--generic", generic, "Require invariance as a polynomial identity in t");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*verify) {
      if (!fields.empty()) cfg.fields = fields;
      if (!quaternions.empty()) cfg.quaternions = parse_quaternion_list(quaternions);
      VerificationReport report;
      if (which == "thm-b") report = cmd_verify_thm_b(cfg);
      else if (which == "thm-a") report = cmd_verify_thm_a(cfg);
      else if (which == "char2") report = cmd_verify_char2(cfg);
      else report = cmd_verify_lemmas(cfg);
      if (json_path == "-") {
        std::cout << report.to_json().dump(2) << "\n";
      } else {
        print_report(report, verbose);
        if (!json_path.empty()) {
          std::ofstream out(json_path);
          if (!out) throw parse_error("cannot write " + json_path);
          out << report.to_json().dump(2) << "\n";
        }
      }
      return report.exit_code();
    }
    if (*cls) return run_classify(field_text, form_text, named);
    if (*form) return run_form(form_field, form_args);
    if (*space) return run_invariant_space(space_n, space_field, sample, generic);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const arithmetic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
