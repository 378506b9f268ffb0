#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmlattice/errors.hpp"
#include "rmlattice/generator.hpp"
#include "rmlattice/io.hpp"
#include "rmlattice/oracle.hpp"

namespace {

using namespace rmlattice;

enum ExitCode : int { kOk = 0, kFailure = 1, kHypothesis = 2, kInvariant = 3 };

PolarizedRMSurface load_valid_instance(const std::string& path) {
  PolarizedRMSurface s = parse_instance(read_file(path));
  if (auto v = validate(s); !v) throw FormatError(path + ": invalid instance: " + v.diagnostic);
  return s;
}

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-")
    std::cout << contents;
  else
    write_file(path, contents);
}

int cmd_generate(const std::string& d, const std::string& f, const std::vector<std::string>& primes,
                 std::uint64_t seed, const std::string& out) {
  std::vector<Int> ells;
  for (const auto& p : primes)
    if (!p.empty()) ells.emplace_back(p);
  emit(out, serialize_instance(generate_instance(Int(d), Int(f), ells, seed)));
  return kOk;
}

int cmd_principalize(const std::string& in, const std::string& out, const std::string& cert_out) {
  const PolarizedRMSurface s = load_valid_instance(in);
  const PipelineReport report = principalize(s);
  emit(out, serialize_instance(report.output));
  if (!cert_out.empty()) write_file(cert_out, serialize_certificate(report));
  return kOk;
}

int cmd_verify(const std::string& instance_path, const std::string& cert_path) {
  const PolarizedRMSurface s = load_valid_instance(instance_path);
  const PipelineReport report = parse_certificate(read_file(cert_path));
  if (auto result = verify_certificate(s, report); !result) {
    std::cerr << "verification failed at " << result.diagnostic << "\n";
    return kFailure;
  }
  std::cout << "ok: " << report.steps.size() << " steps replayed\n";
  return kOk;
}

int cmd_info(const std::string& path) {
  const PolarizedRMSurface s = load_valid_instance(path);
  const RealQuadraticOrder stab = stabilizer_order(s);
  const Int deg = degree(s);
  const auto divisors = kernel_of_polarization(s).divisors;
  std::cout << "Δ=" << stab.discriminant << " f=" << stab.conductor << " deg=" << deg << " divisors=("
            << divisors[0] << "," << divisors[1] << "," << divisors[2] << "," << divisors[3] << ")\n";
  for (const auto& [ell, e] : factorize(deg)) {
    (void)e;
    std::cout << ell << ": " << (ell == 2 ? std::string("even") : to_string(splitting_type(stab, ell)))
              << "\n";
  }
  const Int d = primitive_pfaffian(s);
  std::cout << "humbert(Δ=" << stab.discriminant << ", d=" << d
            << "): " << (humbert_nonempty(stab.discriminant, d) ? "true" : "false") << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal polarizations for abelian surfaces with real multiplication"};
  app.require_subcommand(1);

  std::string d, f = "1", out, in, cert_out, instance_path, cert_path;
  std::vector<std::string> primes;
  std::uint64_t seed = 0;

  auto* gen = app.add_subcommand("generate", "Generate a random instance");
  gen->add_option("--D", d, "Squarefree D >= 2 of Q(sqrt D)")->required();
  gen->add_option("--conductor", f, "Conductor of the order");
  gen->add_option("--degree-primes", primes, "Comma-separated odd primes; Pf = their product")
      ->delimiter(',');
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("-o,--out", out, "Output path (default: stdout)");

  auto* pri = app.add_subcommand("principalize", "Reduce to a principal polarization with maximal RM");
  pri->add_option("input", in, "Instance file")->required()->check(CLI::ExistingFile);
  pri->add_option("-o,--out", out, "Output instance path (default: stdout)");
  pri->add_option("--cert-out", cert_out, "Certificate output path");

  auto* ver = app.add_subcommand("verify", "Replay and check a certificate");
  ver->add_option("instance", instance_path, "Input instance file")->required()->check(CLI::ExistingFile);
  ver->add_option("certificate", cert_path, "Certificate file")->required()->check(CLI::ExistingFile);

  auto* info = app.add_subcommand("info", "Print invariants of an instance");
  info->add_option("instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kFailure;
  }

  try {
    if (*gen) return cmd_generate(d, f, primes, seed, out);
    if (*pri) return cmd_principalize(in, out, cert_out);
    if (*ver) return cmd_verify(instance_path, cert_path);
    if (*info) return cmd_info(instance_path);
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return kHypothesis;
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return kHypothesis;
  } catch (const std::domain_error& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return kHypothesis;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
