// Command-line front end. Exit status: 0 success or true, 1 false or No,
// 2 invalid input.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fieldtopos/charpres.hpp"
#include "fieldtopos/fieldsite.hpp"
#include "fieldtopos/io.hpp"
#include "fieldtopos/polyfield.hpp"
#include "fieldtopos/regring.hpp"
#include "fieldtopos/site.hpp"

using namespace fieldtopos;
using json = nlohmann::json;

namespace {

struct Args {
  bool json = false;
  std::uint64_t p = 0, bound = 0;
  int n = 0, d = 0, k = 0, m = 0;
  std::string a, b, poly;
  std::string file, cat, top = "trivial", presheaf, object, sieve, set, cat_out, top_out;
};

int verdict(bool v) { return v ? 0 : 1; }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ") {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---- polynomials and fields

int irr_enumerate(const Args& a) {
  std::vector<std::string> out;
  for (const Poly& f : enumerate_irreducibles(a.p, a.d)) out.push_back(to_string(f));
  if (a.json) {
    print(out);
  } else {
    for (const auto& s : out) std::cout << s << "\n";
  }
  return 0;
}

int irr_test(const Args& a) {
  require_prime(a.p);
  const bool irr = is_irreducible(reduce(parse_poly(a.poly), a.p), a.p);
  if (a.json)
    print({{"irreducible", irr}});
  else
    std::cout << (irr ? "irreducible" : "reducible") << "\n";
  return verdict(irr);
}

int field_make(const Args& a) {
  const FiniteField F = make_field(a.p, a.n);
  if (a.json)
    print({{"p", F.characteristic()}, {"n", F.degree()}, {"order", F.order()}, {"modulus", to_string(F.modulus())}});
  else
    std::cout << F.to_string() << "\n";
  return 0;
}

int field_embed(const Args& a) {
  const FiniteField F = parse_field(a.a), G = parse_field(a.b);
  std::vector<std::string> images;
  for (const auto& e : embeddings(F, G)) images.push_back(to_string(G.rep(e.image)));
  if (a.json) {
    print({{"count", images.size()}, {"images", images}});
  } else {
    std::cout << images.size() << " embeddings " << F.short_name() << " -> " << G.short_name() << "\n";
    for (const auto& s : images) std::cout << "  x -> " << s << "\n";
  }
  return 0;
}

int field_minpoly(const Args& a) {
  const FiniteField F = parse_field(a.a);
  const Poly m = min_poly({F, F.encode(parse_poly(a.poly))});
  if (a.json)
    print({{"minpoly", to_string(m)}});
  else
    std::cout << to_string(m) << "\n";
  return 0;
}

// ---- regular rings

int ring_star(const Args& a) {
  const RegularRing R = parse_ring(a.a);
  const std::string s = R.element_to_string(star(R, parse_element(R, a.b)));
  if (a.json)
    print({{"star", s}});
  else
    std::cout << s << "\n";
  return 0;
}

int print_quotients(const Args& a, const Quotient& killed, const Quotient& inverted) {
  if (a.json)
    print({{"annihilated", killed.ring.to_string()}, {"inverted", inverted.ring.to_string()}});
  else
    std::cout << "R/(a) = " << killed.ring.to_string() << "; R/(aa*-1) = " << inverted.ring.to_string() << "\n";
  return 0;
}

int ring_cover(const Args& a) {
  const RegularRing R = parse_ring(a.a);
  const auto cover = principal_cover(R, parse_element(R, a.b));
  return print_quotients(a, cover.annihilated, cover.inverted);
}

int ring_split(const Args& a) {
  const RegularRing R = parse_ring(a.a);
  const auto [killed, inverted] = split_idempotent(R, parse_element(R, a.b));
  return print_quotients(a, killed, inverted);
}

int ring_decompose(const Args& a) {
  require_prime(a.p);
  const Decomposition D = decompose_to_fields(a.p, reduce(parse_poly(a.poly), a.p));
  std::vector<std::string> factors;
  for (const Poly& f : D.factors) factors.push_back(to_string(f));
  if (a.json)
    print({{"ring", D.ring.to_string()}, {"factors", factors}});
  else
    std::cout << D.ring.to_string() << "\nfactors: " << join(factors) << "\n";
  return 0;
}

int ring_type(const Args& a) {
  const RegularRing R = parse_ring(a.a);
  std::vector<std::string> out;
  for (const Poly& f : element_type(R, parse_element(R, a.b))) out.push_back(to_string(f));
  if (a.json)
    print(out);
  else
    std::cout << "{" << join(out) << "}\n";
  return 0;
}

int ring_homs(const Args& a) {
  const RegularRing R = parse_ring(a.a), S = parse_ring(a.b);
  const auto homs = hom_enumerate(R, S);
  std::vector<std::string> lines;
  for (const auto& h : homs) {
    std::vector<std::string> parts;
    for (std::size_t j = 0; j < h.source.size(); ++j)
      parts.push_back(std::to_string(j) + "<-" + std::to_string(h.source[j]) + ": x -> " +
                      to_string(S.component(j).rep(h.maps[j].image)));
    lines.push_back("[" + join(parts) + "]");
  }
  if (a.json) {
    print({{"count", homs.size()}, {"homs", lines}});
  } else {
    std::cout << homs.size() << " homomorphisms " << R.to_string() << " -> " << S.to_string() << "\n";
    for (const auto& l : lines) std::cout << "  " << l << "\n";
  }
  return 0;
}

// ---- presentations

Presentation load_presentation(const Args& a) { return io::presentation_from_json(io::read_json_file(a.file)); }

json char_set_json(const CharSet& cs) {
  return {{"contains_zero", cs.contains_zero},
          {"primes", cs.primes_in},
          {"kind", cs.kind == CertificateKind::FiniteWithoutZero ? "finite" : "cofinite"},
          {"certificate", cs.certificate.str()},
          {"bound", cs.bound}};
}

int pres_char(const Args& a) {
  const Presentation P = load_presentation(a);
  const CharSet cs = char_set(P, a.bound);
  if (a.json)
    print({{"presentation", io::to_json(P)}, {"char_set", char_set_json(cs)}, {"text", cs.to_string()}});
  else
    std::cout << cs.to_string() << "\n";
  return 0;
}

int pres_type(const Args& a) {
  const TypeSet ts = type_set(load_presentation(a), a.p, a.d);
  std::vector<std::string> out;
  for (const Poly& f : ts.polys_in) out.push_back(to_string(f));
  if (a.json) {
    print({{"p", ts.p}, {"degree_bound", ts.degree_bound}, {"infinity", ts.contains_infinity}, {"polys", out}});
  } else {
    if (ts.contains_infinity) out.push_back("∞");
    std::cout << "{" << join(out) << "}";
    if (ts.contains_infinity) std::cout << " (finite types listed to degree " << ts.degree_bound << ")";
    std::cout << "\n";
  }
  return 0;
}

int pres_cover_union(const Args& a) {
  const auto rep = cover_union_check(load_presentation(a), parse_poly(a.poly), a.bound);
  if (a.json) {
    print({{"pass", rep.pass},
           {"whole", rep.whole.to_string()},
           {"annihilated", rep.killed.to_string()},
           {"inverted", rep.inverted.to_string()},
           {"mismatch", rep.mismatch}});
  } else {
    std::cout << (rep.pass ? "pass" : "fail at " + rep.mismatch) << "\n"
              << "  R:         " << rep.whole.to_string() << "\n"
              << "  R/(a):     " << rep.killed.to_string() << "\n"
              << "  R/(aa*-1): " << rep.inverted.to_string() << "\n";
  }
  return verdict(rep.pass);
}

int pres_tsieve(const Args& a) {
  std::set<std::uint64_t> A;
  for (const auto& s : split_list(a.set)) {
    try {
      A.insert(std::stoull(s));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "bad characteristic '" + s + "'");
    }
  }
  for (auto p : A)
    if (p != 0) require_prime(p);
  const Verdict v = t_sieve_member(load_presentation(a), A, a.bound);
  if (a.json)
    print({{"verdict", to_string(v)}});
  else
    std::cout << to_string(v) << "\n";
  return verdict(v == Verdict::Yes);
}

// ---- sites

FinCategory load_category(const Args& a) { return io::category_from_json(io::read_json_file(a.cat)); }

Topology load_topology(const SitePtr& site, const Args& a) {
  if (a.top == "trivial") return trivial_topology(site);
  return io::topology_from_json(site, io::read_json_file(a.top));
}

void print_topology(const Args& a, const Topology& J) {
  if (a.json) {
    print(io::to_json(J));
    return;
  }
  const Site& site = *J.site();
  for (int d = 0; d < static_cast<int>(site.object_count()); ++d) {
    std::cout << site.category().object_name(d) << ":";
    for (int s : J.minimal_covers(d)) std::cout << " " << site.sieve_to_string(d, s);
    std::cout << "\n";
  }
}

std::pair<int, int> load_sieve(const Site& site, const Args& a) {
  const auto& C = site.category();
  auto d = C.find_object(a.object);
  if (!d) throw Error(ErrorKind::UnknownObject, "unknown object " + a.object);
  std::vector<int> gens;
  for (const auto& id : split_list(a.sieve)) {
    auto f = C.find_morphism(id);
    if (!f) throw Error(ErrorKind::DanglingMorphism, "unknown morphism " + id);
    gens.push_back(*f);
  }
  return {*d, site.generate(*d, gens)};
}

void print_sieve(const Args& a, const Site& site, int d, int s) {
  if (a.json)
    print(io::sieve_to_json(site, d, s));
  else
    std::cout << site.sieve_to_string(d, s) << "\n";
}

int site_validate(const Args& a) {
  const FinCategory C = load_category(a);
  if (a.json)
    print(io::to_json(C));
  else
    std::cout << "valid category: " << C.object_count() << " objects, " << C.morphism_count() << " morphisms\n";
  return 0;
}

int site_saturate(const Args& a) {
  auto site = make_site(load_category(a));
  print_topology(a, load_topology(site, a));
  return 0;
}

int site_closure(const Args& a) {
  auto site = make_site(load_category(a));
  const Topology J = load_topology(site, a);
  auto [d, s] = load_sieve(*site, a);
  print_sieve(a, *site, d, closure(J, d, s));
  return 0;
}

int site_neg(const Args& a) {
  auto site = make_site(load_category(a));
  const Topology J = load_topology(site, a);
  auto [d, s] = load_sieve(*site, a);
  print_sieve(a, *site, d, heyting_neg(J, d, s));
  return 0;
}

int site_demorgan(const Args& a) {
  auto site = make_site(load_category(a));
  const auto rep = is_demorgan(load_topology(site, a));
  if (a.json) {
    json j{{"holds", rep.holds}};
    if (!rep.holds) {
      j["object"] = site->category().object_name(rep.object);
      j["sieve"] = io::sieve_to_json(*site, rep.object, rep.sieve);
    }
    print(j);
  } else if (rep.holds) {
    std::cout << "true\n";
  } else {
    std::cout << "false; witness object " << site->category().object_name(rep.object) << ", sieve "
              << site->sieve_to_string(rep.object, rep.sieve) << "\n";
  }
  return verdict(rep.holds);
}

int site_dense(const Args& a) {
  auto site = make_site(load_category(a));
  print_topology(a, dense_topology(load_topology(site, a)));
  return 0;
}

int site_demorganize(const Args& a) {
  auto site = make_site(load_category(a));
  print_topology(a, demorganization(load_topology(site, a)));
  return 0;
}

int print_bool(const Args& a, bool v) {
  if (a.json)
    print({{"holds", v}});
  else
    std::cout << (v ? "true" : "false") << "\n";
  return verdict(v);
}

int site_boolean(const Args& a) {
  auto site = make_site(load_category(a));
  return print_bool(a, is_boolean(load_topology(site, a)));
}

int site_ore(const Args& a) {
  const FinCategory C = load_category(a);
  const auto rep = ore_check(C);
  if (a.json) {
    json j{{"holds", rep.holds}};
    if (!rep.holds) j["span"] = {C.morphism_id(rep.f), C.morphism_id(rep.g)};
    print(j);
  } else if (rep.holds) {
    std::cout << "true\n";
  } else {
    std::cout << "false; span " << C.morphism_id(rep.f) << ", " << C.morphism_id(rep.g) << " has no amalgamation\n";
  }
  return verdict(rep.holds);
}

int site_atomic(const Args& a) {
  const FinCategory C = load_category(a);
  try {
    print_topology(a, atomic_topology(C));
    return 0;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAtomicizable) throw;
    if (a.json)
      print({{"holds", false}, {"reason", e.what()}});
    else
      std::cout << "false; nonempty cosieves do not form a topology (" << e.what() << ")\n";
    return 1;
  }
}

int site_sheaf(const Args& a) {
  const FinCategory C = load_category(a);
  auto site = make_site(C);
  const Presheaf P = io::presheaf_from_json(C, io::read_json_file(a.presheaf));
  return print_bool(a, is_sheaf(load_topology(site, a), P));
}

int print_rigidity(const Args& a, const Site& site, const RigidityReport& rep, bool extra_ok) {
  std::vector<std::string> irr;
  for (int d : rep.irreducibles) irr.push_back(site.category().object_name(d));
  const bool ok = rep.rigid && extra_ok;
  if (a.json) {
    json j{{"rigid", rep.rigid}, {"irreducibles", irr}, {"holds", ok}};
    if (!rep.rigid) j["failing_object"] = site.category().object_name(rep.failing_object);
    print(j);
  } else if (rep.rigid) {
    std::cout << (ok ? "rigid" : "rigid, but irreducibles are not the fields") << "; irreducibles {" << join(irr)
              << "}\n";
  } else {
    std::cout << "not rigid at " << site.category().object_name(rep.failing_object) << "\n";
  }
  return verdict(ok);
}

int site_rigid(const Args& a) {
  auto site = make_site(load_category(a));
  return print_rigidity(a, *site, rigidity_check(load_topology(site, a)), true);
}

// ---- truncated field sites

TruncatedSite load_truncation(const Args& a) { return build_truncated_site(a.p, a.d, a.k); }

int fieldsite_build(const Args& a) {
  const TruncatedSite T = load_truncation(a);
  std::vector<std::string> objects;
  for (const auto& R : T.rings) objects.push_back(R.to_string());
  std::size_t covers = 0;
  for (int c = 0; c < static_cast<int>(T.rings.size()); ++c) covers += T.coverage.minimal_covers(c).size();
  if (a.json) {
    print({{"objects", objects}, {"morphisms", T.homs.size()}, {"minimal_covers", covers}});
  } else {
    std::cout << "objects=" << objects.size() << " morphisms=" << T.homs.size() << " minimal_covers=" << covers << "\n";
    for (const auto& o : objects) std::cout << "  " << o << "\n";
  }
  return 0;
}

int fieldsite_dump(const Args& a) {
  const TruncatedSite T = load_truncation(a);
  const json cat = io::to_json(T.category()), top = io::to_json(T.coverage);
  if (a.cat_out.empty() && a.top_out.empty()) {
    print({{"category", cat}, {"topology", top}});
    return 0;
  }
  auto write = [](const std::string& path, const json& j) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    out << j.dump(2) << "\n";
  };
  write(a.cat_out, cat);
  write(a.top_out, top);
  return 0;
}

int fieldsite_rigid(const Args& a) {
  const TruncatedSite T = load_truncation(a);
  const auto rep = rigidity_check_field(T);
  return print_rigidity(a, *T.site, rep.base, rep.irreducibles_are_fields && rep.zero_ring_reducible);
}

int fieldsite_charcover(const Args& a) {
  const TruncatedSite T = load_truncation(a);
  return print_bool(a, char_cover_check(T, parse_ring(a.a)));
}

int fieldsite_orefields(const Args& a) {
  const auto rep = ore_fields(a.p, a.d);
  if (a.json) {
    print({{"holds", rep.holds}, {"tested", rep.tested}, {"untestable", rep.untestable}});
  } else {
    std::cout << (rep.holds ? "true" : "false") << "; " << rep.tested << " spans tested, " << rep.untestable
              << " untestable at degree bound " << a.d << "\n";
  }
  return verdict(rep.holds);
}

int fieldsite_atomicbool(const Args& a) {
  const auto rep = atomic_booleanization_check(a.p, a.d);
  std::vector<std::string> degrees;
  for (int d : rep.degrees) degrees.push_back(std::to_string(d));
  if (a.json) {
    print({{"degrees", rep.degrees},
           {"ore", rep.ore},
           {"dense_equals_atomic", rep.dense_equals_atomic},
           {"boolean", rep.boolean},
           {"holds", rep.passed()}});
  } else {
    std::cout << (rep.passed() ? "true" : "false") << "; degrees {" << join(degrees) << "}"
              << (rep.dense_equals_atomic ? ", dense = atomic" : ", dense != atomic")
              << (rep.boolean ? ", Boolean" : ", not Boolean") << "\n";
  }
  return verdict(rep.passed());
}

int fieldsite_gset(const Args& a) {
  const auto rep = gset_homcount(a.p, a.m, a.n);
  const bool ok = rep.hom_count == static_cast<std::size_t>(a.n % a.m == 0 ? a.m : 0) &&
                  (rep.hom_count == 0 || rep.transitive());
  if (a.json) {
    print({{"p", rep.p},
           {"m", rep.m},
           {"n", rep.n},
           {"count", rep.hom_count},
           {"orbits", rep.orbits},
           {"transitive", rep.transitive()}});
  } else {
    std::vector<std::string> sizes;
    for (auto s : rep.orbits) sizes.push_back(std::to_string(s));
    std::cout << "count=" << rep.hom_count << " orbits=[" << join(sizes, ",") << "]"
              << (rep.transitive() ? " transitive" : "") << "\n";
  }
  return verdict(ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite fields, regular rings and finite Grothendieck sites"};
  app.require_subcommand(1);
  app.fallthrough();
  Args args;
  app.add_flag("--json", args.json, "Machine-readable output");
  std::function<int(const Args&)> action;

  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help, int (*fn)(const Args&)) {
    auto* c = group->add_subcommand(name, help);
    c->callback([&action, fn] { action = fn; });
    return c;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };

  auto* irr = group("irr", "Monic irreducible polynomials");
  auto* c = leaf(irr, "enumerate", "All monic irreducibles mod p up to a degree", irr_enumerate);
  c->add_option("p", args.p, "Prime")->required();
  c->add_option("degree", args.d, "Maximum degree")->required();
  c = leaf(irr, "test", "Irreducibility mod p", irr_test);
  c->add_option("poly", args.poly, "Polynomial, e.g. x^2+x+1")->required();
  c->add_option("p", args.p, "Prime")->required();

  auto* field = group("field", "Finite fields");
  c = leaf(field, "make", "The canonical GF(p^n)", field_make);
  c->add_option("p", args.p, "Prime")->required();
  c->add_option("n", args.n, "Degree")->required()->check(CLI::PositiveNumber);
  c = leaf(field, "embed", "Embeddings between two fields", field_embed);
  c->add_option("from", args.a, "Field, e.g. GF(4)")->required();
  c->add_option("to", args.b, "Field")->required();
  c = leaf(field, "minpoly", "Minimal polynomial of an element", field_minpoly);
  c->add_option("field", args.a, "Field")->required();
  c->add_option("element", args.poly, "Polynomial in the generator x")->required();

  auto* ring = group("ring", "Finite regular rings");
  c = leaf(ring, "star", "Quasi-inverse x*", ring_star);
  c->add_option("ring", args.a, "Ring, e.g. 'GF(2) x GF(4)' or 'GF(2)[x]/(x^3+1)'")->required();
  c->add_option("element", args.b, "Element, e.g. '(1, x)'")->required();
  c = leaf(ring, "cover", "The quotients R/(a) and R/(aa*-1)", ring_cover);
  c->add_option("ring", args.a, "Ring")->required();
  c->add_option("element", args.b, "Element")->required();
  c = leaf(ring, "split", "Split along a proper idempotent", ring_split);
  c->add_option("ring", args.a, "Ring")->required();
  c->add_option("element", args.b, "Element, neither zero nor a unit")->required();
  c = leaf(ring, "decompose", "GF(p)[x]/(f) as a product of fields", ring_decompose);
  c->add_option("p", args.p, "Prime")->required();
  c->add_option("f", args.poly, "Squarefree polynomial")->required();
  c = leaf(ring, "type", "Minimal polynomials of an element's components", ring_type);
  c->add_option("ring", args.a, "Ring")->required();
  c->add_option("element", args.b, "Element")->required();
  c = leaf(ring, "homs", "Unital ring homomorphisms", ring_homs);
  c->add_option("from", args.a, "Ring")->required();
  c->add_option("to", args.b, "Ring")->required();

  auto* pres = group("pres", "Finitely presented regular rings over Z");
  c = leaf(pres, "char", "Characteristic set with certificate", pres_char);
  c->add_option("--file", args.file, "Presentation JSON")->required();
  c->add_option("--bound", args.bound, "Check primes up to this bound")->default_val(50);
  c = leaf(pres, "type", "Types realized in characteristic p", pres_type);
  c->add_option("--file", args.file, "Presentation JSON")->required();
  c->add_option("--p", args.p, "Prime")->required();
  c->add_option("--degree", args.d, "Degree bound for transcendental fibres")->default_val(4);
  c = leaf(pres, "cover-union", "Char R = Char R/(a) ∪ Char R/(aa*-1)", pres_cover_union);
  c->add_option("--file", args.file, "Presentation JSON")->required();
  c->add_option("--a", args.poly, "Element a as a polynomial in x")->required();
  c->add_option("--bound", args.bound, "Prime bound")->default_val(100);
  c = leaf(pres, "tsieve", "Whether Char R lies in a finite set", pres_tsieve);
  c->add_option("--file", args.file, "Presentation JSON")->required();
  c->add_option("--set", args.set, "Characteristics, e.g. 2,3 (0 allowed)")->required();
  c->add_option("--bound", args.bound, "Prime bound")->default_val(50);

  auto* site = group("site", "Finite categories and Grothendieck topologies");
  auto cat_opt = [&](CLI::App* s) { s->add_option("--cat", args.cat, "Category JSON")->required(); };
  auto top_opt = [&](CLI::App* s) {
    cat_opt(s);
    s->add_option("--top", args.top, "Topology JSON, or 'trivial'")->default_val("trivial");
  };
  auto sieve_opt = [&](CLI::App* s) {
    top_opt(s);
    s->add_option("--object", args.object, "Object name")->required();
    s->add_option("--sieve", args.sieve, "Generating morphism ids, comma separated")->default_val("");
  };
  cat_opt(leaf(site, "validate", "Validate a category", site_validate));
  top_opt(leaf(site, "saturate", "Least topology containing the given covers", site_saturate));
  sieve_opt(leaf(site, "closure", "Closure of a sieve", site_closure));
  sieve_opt(leaf(site, "neg", "Heyting negation of a sieve", site_neg));
  top_opt(leaf(site, "demorgan", "De Morgan's law for the sheaf topos", site_demorgan));
  top_opt(leaf(site, "dense", "Largest topology dense over the given one", site_dense));
  top_opt(leaf(site, "demorganize", "Least dense De Morgan topology above the given one", site_demorganize));
  top_opt(leaf(site, "boolean", "Whether the sheaf topos is Boolean", site_boolean));
  cat_opt(leaf(site, "ore", "Amalgamation of spans", site_ore));
  cat_opt(leaf(site, "atomic", "Nonempty cosieves as a topology", site_atomic));
  c = leaf(site, "sheaf", "Sheaf condition for a presheaf", site_sheaf);
  top_opt(c);
  c->add_option("--presheaf", args.presheaf, "Presheaf JSON")->required();
  top_opt(leaf(site, "rigid", "Rigidity of the topology", site_rigid));

  auto* fs = group("fieldsite", "Truncated sites of finite regular rings");
  // defaults to the (3, 3, 2) truncation unless a ring argument follows
  auto trunc_opt = [&](CLI::App* s, bool required = false) {
    auto* P = s->add_option("P", args.p, "Characteristic bound")->default_val(3);
    auto* D = s->add_option("D", args.d, "Degree bound")->default_val(3);
    auto* k = s->add_option("k", args.k, "Component bound")->default_val(2);
    if (required)
      for (auto* o : {P, D, k}) o->required();
  };
  trunc_opt(leaf(fs, "build", "Objects and morphism count", fieldsite_build));
  c = leaf(fs, "dump", "Category and topology JSON", fieldsite_dump);
  trunc_opt(c);
  c->add_option("--cat-out", args.cat_out, "Write the category here");
  c->add_option("--top-out", args.top_out, "Write the topology here");
  trunc_opt(leaf(fs, "rigid", "Rigidity with irreducibles = fields", fieldsite_rigid));
  c = leaf(fs, "charcover", "Cover by the quotients R/(p)", fieldsite_charcover);
  trunc_opt(c, true);
  c->add_option("ring", args.a, "Object, e.g. 'GF(2) x GF(3)'")->required();
  c = leaf(fs, "orefields", "Amalgamation of field embeddings", fieldsite_orefields);
  c->add_option("p", args.p, "Prime")->required();
  c->add_option("D", args.d, "Degree bound")->required()->check(CLI::PositiveNumber);
  c = leaf(fs, "atomicbool", "Dense = atomic and Boolean on fields", fieldsite_atomicbool);
  c->add_option("p", args.p, "Prime")->required();
  c->add_option("D", args.d, "Degree")->required()->check(CLI::PositiveNumber);
  c = leaf(fs, "gset", "Frobenius orbits on embeddings", fieldsite_gset);
  c->add_option("p", args.p, "Prime")->required();
  c->add_option("m", args.m, "Source degree")->required()->check(CLI::PositiveNumber);
  c->add_option("n", args.n, "Target degree")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    return action(args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
