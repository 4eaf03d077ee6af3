#include "pgap/certify.hpp"
#include "pgap/decimal.hpp"
#include "pgap/errors.hpp"
#include "pgap/gapscan.hpp"
#include "pgap/powertuple.hpp"
#include "pgap/sieve.hpp"
#include "pgap/sqfree.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

namespace py = pybind11;
using namespace pgap;

namespace {

py::int_ to_pyint(const mpz_class& z) {
    PyObject* obj = PyLong_FromString(z.get_str().c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

mpz_class from_pyint(const py::int_& v) {
    return mpz_class(py::str(v).cast<std::string>());
}

double rational_to_double(const mpq_class& q, mpfr_rnd_t rnd) {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_q(t, q.get_mpq_t(), rnd);
    double d = mpfr_get_d(t, rnd);
    mpfr_clear(t);
    return d;
}

py::dict exponent_vector_to_dict(const powertuple::ExponentVector& v) {
    py::dict d;
    for (const auto& [p, e] : v) d[py::int_(p)] = to_pyint(e);
    return d;
}

powertuple::ExponentVector exponent_vector_from_dict(const py::dict& d) {
    powertuple::ExponentVector v;
    for (auto item : d)
        v[item.first.cast<std::uint64_t>()] = from_pyint(py::reinterpret_borrow<py::int_>(item.second));
    return v;
}

certify::Parity parity_from_string(const std::string& s) {
    if (s == "even") return certify::Parity::even;
    if (s == "odd") return certify::Parity::odd;
    throw std::domain_error("parity must be 'even' or 'odd'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "prime-gap structures toolkit: certified constants, sieve scans, "
              "square-difference-free constructions, perfect-power tuples";

    py::register_exception<insufficient_table_error>(m, "InsufficientTableError", PyExc_RuntimeError);
    py::register_exception<infeasible_system_error>(m, "InfeasibleSystemError", PyExc_RuntimeError);

    py::class_<CertifiedInterval>(m, "CertifiedInterval")
        .def_property_readonly("lo", [](const CertifiedInterval& iv) { return rational_to_double(iv.lo, MPFR_RNDD); })
        .def_property_readonly("hi", [](const CertifiedInterval& iv) { return rational_to_double(iv.hi, MPFR_RNDU); })
        .def_readonly("description", &CertifiedInterval::description)
        .def("lo_str", [](const CertifiedInterval& iv, int digits) { return decimal_from_rational(iv.lo, digits, MPFR_RNDD); }, py::arg("digits") = 30)
        .def("hi_str", [](const CertifiedInterval& iv, int digits) { return decimal_from_rational(iv.hi, digits, MPFR_RNDU); }, py::arg("digits") = 30)
        .def("__repr__", [](const CertifiedInterval& iv) {
            return "[" + decimal_from_rational(iv.lo, 20, MPFR_RNDD) + ", " +
                   decimal_from_rational(iv.hi, 20, MPFR_RNDU) + "]";
        });

    py::class_<InequalityReport>(m, "InequalityReport")
        .def_readonly("name", &InequalityReport::name)
        .def_readonly("claimed", &InequalityReport::claimed)
        .def_readonly("verified", &InequalityReport::verified)
        .def_readonly("witness", &InequalityReport::witness)
        .def("__repr__", [](const InequalityReport& r) {
            return "<" + r.name + ": " + (r.verified ? "verified" : "NOT verified") + ">";
        });

    // sieve
    py::class_<PrimeTable>(m, "PrimeTable")
        .def_property_readonly("limit", &PrimeTable::limit)
        .def_property_readonly("count", &PrimeTable::count)
        .def("primes", [](const PrimeTable& t) { return t.primes(); })
        .def("nth", &PrimeTable::nth, py::arg("n"))
        .def("contains", &PrimeTable::contains, py::arg("v"))
        .def("count_upto", &PrimeTable::count_upto, py::arg("x"))
        .def("__len__", &PrimeTable::count);

    m.def(
        "primes_up_to",
        [](std::uint64_t x, std::uint64_t segment_size, std::optional<std::string> cache_path,
           unsigned threads) {
            SieveConfig cfg;
            cfg.segment_size = segment_size;
            if (cache_path) cfg.cache_path = *cache_path;
            cfg.threads = threads;
            return primes_up_to(x, cfg);
        },
        py::arg("x"), py::arg("segment_size") = (std::uint64_t{1} << 20),
        py::arg("cache_path") = std::nullopt, py::arg("threads") = 1);
    m.def("nth_prime", &nth_prime, py::arg("table"), py::arg("n"));
    m.def("pair_count_with_difference", &pair_count_with_difference, py::arg("table"), py::arg("N"),
          py::arg("h"));

    // certify
    m.def("euler_product_partial", &certify::euler_product_partial, py::arg("limit"),
          py::arg("precision_bits") = certify::kDefaultPrecision);
    m.def("pair_tail_sum", &certify::pair_tail_sum, py::arg("T"),
          py::arg("precision_bits") = certify::kDefaultPrecision);
    m.def(
        "sqfree_parity_sum",
        [](std::uint64_t T, const std::string& parity, mpfr_prec_t prec) {
            return certify::sqfree_parity_sum(T, parity_from_string(parity), prec);
        },
        py::arg("T"), py::arg("parity"), py::arg("precision_bits") = certify::kDefaultPrecision);
    m.def(
        "telescoped_pair_tail",
        [](std::uint64_t T) { return decimal_from_rational(certify::telescoped_pair_tail(T), 30, MPFR_RNDN); },
        py::arg("T"));
    m.def(
        "program5_bounds",
        [](mpfr_prec_t prec) {
            auto b = certify::program5_bounds(prec);
            return py::make_tuple(b.log10_W, b.exponent, to_pyint(b.primorial_below_50),
                                  to_pyint(b.first43_product));
        },
        py::arg("precision_bits") = certify::kDefaultPrecision);
    m.def("appendix_reports", &certify::appendix_reports,
          py::arg("precision_bits") = certify::kDefaultPrecision);
    m.def("verify_lemma1_chain", &certify::verify_lemma1_chain,
          py::arg("precision_bits") = certify::kDefaultPrecision);
    m.def("verify_theorem3_display", &certify::verify_theorem3_display,
          py::arg("precision_bits") = certify::kDefaultPrecision);
    m.def("verify_tower_bound", &certify::verify_tower_bound, py::arg("m"),
          py::arg("precision_bits") = certify::kDefaultPrecision);
    m.def("check_classical_inequalities", &certify::check_classical_inequalities, py::arg("x_max"),
          py::arg("k_max"), py::arg("precision_bits") = certify::kDefaultPrecision);

    // sqfree
    py::class_<sqfree::ResidueSet>(m, "ResidueSet")
        .def(py::init([](std::uint64_t modulus, std::vector<std::uint32_t> residues) {
                 return sqfree::make_residue_set(modulus, std::move(residues));
             }),
             py::arg("modulus"), py::arg("residues"))
        .def_readonly("modulus", &sqfree::ResidueSet::modulus)
        .def_readonly("residues", &sqfree::ResidueSet::residues)
        .def("__repr__", [](const sqfree::ResidueSet& r) {
            std::string s = "ResidueSet(mod " + std::to_string(r.modulus) + ", {";
            for (std::size_t i = 0; i < r.residues.size(); ++i)
                s += (i ? "," : "") + std::to_string(r.residues[i]);
            return s + "})";
        });

    py::class_<sqfree::DigitTupleSpec>(m, "DigitTupleSpec")
        .def(py::init([](std::uint64_t modulus, unsigned digits, std::vector<std::uint32_t> shifts) {
                 return sqfree::DigitTupleSpec{modulus, digits, std::move(shifts)};
             }),
             py::arg("modulus"), py::arg("digits"), py::arg("shifts"))
        .def_readonly("modulus", &sqfree::DigitTupleSpec::modulus)
        .def_readonly("digits", &sqfree::DigitTupleSpec::digits)
        .def_readonly("shifts", &sqfree::DigitTupleSpec::shifts);

    m.def(
        "squares_mod", [](std::uint64_t modulus) { return sqfree::squares_mod(modulus).squares; },
        py::arg("m"));
    m.def("is_sdf_residue_set", &sqfree::is_sdf_residue_set, py::arg("residue_set"));
    m.def(
        "is_sdf_residues",
        [](std::uint64_t modulus, std::vector<std::uint32_t> residues) {
            return sqfree::is_sdf_residue_set(sqfree::make_residue_set(modulus, std::move(residues)));
        },
        py::arg("m"), py::arg("residues"));
    m.def("ruzsa_65", &sqfree::ruzsa_65);
    m.def(
        "max_sdf_residues",
        [](std::uint64_t modulus, bool exact, std::uint64_t budget) {
            auto r = sqfree::max_sdf_residues(
                modulus, exact ? sqfree::SearchMode::exact : sqfree::SearchMode::witness, budget);
            return py::make_tuple(r.size, r.witness, r.optimal);
        },
        py::arg("m"), py::arg("exact") = true, py::arg("budget") = 100'000'000);
    m.def("shifted_family", &sqfree::shifted_family, py::arg("residue_set"), py::arg("a"));
    m.def(
        "build_digit_set",
        [](const sqfree::DigitTupleSpec& spec, const sqfree::ResidueSet& r) {
            return sqfree::build_digit_set(spec, r).elements;
        },
        py::arg("spec"), py::arg("residue_set"));
    m.def(
        "best_tuple_for_primes",
        [](std::uint64_t modulus, unsigned n, const sqfree::ResidueSet& r, const PrimeTable& t) {
            auto b = sqfree::best_tuple_for_primes(modulus, n, r, t);
            return py::make_tuple(b.spec, b.prime_count);
        },
        py::arg("m"), py::arg("n"), py::arg("residue_set"), py::arg("table"));

    py::class_<sqfree::Theorem5Witness>(m, "Theorem5Witness")
        .def_property_readonly("primes",
                               [](const sqfree::Theorem5Witness& w) { return w.primes.elements; })
        .def_property_readonly("spec", [](const sqfree::Theorem5Witness& w) { return *w.primes.spec; })
        .def_readonly("bound", &sqfree::Theorem5Witness::bound)
        .def_readonly("gamma", &sqfree::Theorem5Witness::gamma)
        .def_readonly("meets_bound", &sqfree::Theorem5Witness::meets_bound)
        .def_readonly("n", &sqfree::Theorem5Witness::n);
    m.def("theorem5_witness", &sqfree::theorem5_witness, py::arg("x"), py::arg("m"),
          py::arg("residue_set"), py::arg("table"), py::arg("precision_bits") = 192);

    // powertuple
    py::class_<powertuple::TargetAssignment>(m, "TargetAssignment")
        .def_readonly("k", &powertuple::TargetAssignment::k)
        .def_property_readonly("targets", [](const powertuple::TargetAssignment& a) {
            py::dict d;
            for (const auto& [i, t] : a.targets) d[py::int_(i)] = t;
            return d;
        });

    py::class_<powertuple::PowerTupleResult>(m, "PowerTupleResult")
        .def_property_readonly("W",
                               [](const powertuple::PowerTupleResult& r) { return exponent_vector_to_dict(r.W); })
        .def_property_readonly("a",
                               [](const powertuple::PowerTupleResult& r) { return exponent_vector_to_dict(r.a); })
        .def_readonly("k", &powertuple::PowerTupleResult::k)
        .def_readonly("log10_a", &powertuple::PowerTupleResult::log10_a);

    m.def(
        "primorial",
        [](std::uint64_t K) { return exponent_vector_to_dict(powertuple::primorial(K)); },
        py::arg("K"));
    m.def("default_targets", &powertuple::default_targets, py::arg("k"));
    m.def("paper50_targets", &powertuple::paper50_targets);
    m.def("solve_exponents", &powertuple::solve_exponents, py::arg("K"), py::arg("assignment"),
          py::arg("precision_bits") = 192);
    m.def("verify_power_tuple", &powertuple::verify_power_tuple, py::arg("result"),
          py::arg("assignment"), py::arg("materialize_limit") = 100'000);
    m.def(
        "admissible_check",
        [](const std::vector<std::int64_t>& offsets) {
            auto r = powertuple::admissible_check(offsets);
            return py::make_tuple(r.admissible, r.witness_prime);
        },
        py::arg("offsets"));
    m.def(
        "admissible_check_factored",
        [](const std::vector<py::dict>& offsets) {
            std::vector<powertuple::ExponentVector> evs;
            evs.reserve(offsets.size());
            for (const auto& d : offsets) evs.push_back(exponent_vector_from_dict(d));
            auto r = powertuple::admissible_check(evs);
            return py::make_tuple(r.admissible, r.witness_prime);
        },
        py::arg("offsets"));
    m.def(
        "tuple_offsets",
        [](const powertuple::PowerTupleResult& result) {
            py::list out;
            for (const auto& ev : powertuple::tuple_offsets(result)) out.append(exponent_vector_to_dict(ev));
            return out;
        },
        py::arg("result"));

    // gapscan
    py::enum_<gapscan::Color>(m, "Color")
        .value("red", gapscan::Color::red)
        .value("green", gapscan::Color::green)
        .value("yellow", gapscan::Color::yellow);

    py::class_<gapscan::GreenRun>(m, "GreenRun")
        .def_readonly("start_index", &gapscan::GreenRun::start_index)
        .def_readonly("length", &gapscan::GreenRun::length);

    py::class_<gapscan::ColoringReport>(m, "ColoringReport")
        .def_readonly("x", &gapscan::ColoringReport::x)
        .def_readonly("r", &gapscan::ColoringReport::r)
        .def_readonly("t", &gapscan::ColoringReport::t)
        .def_readonly("colors", &gapscan::ColoringReport::colors)
        .def_readonly("red_count", &gapscan::ColoringReport::red_count)
        .def_readonly("green_count", &gapscan::ColoringReport::green_count)
        .def_readonly("yellow_count", &gapscan::ColoringReport::yellow_count)
        .def_readonly("longest_green_run", &gapscan::ColoringReport::longest_green_run)
        .def_readonly("starts_red", &gapscan::ColoringReport::starts_red)
        .def_readonly("red_interval_count", &gapscan::ColoringReport::red_interval_count)
        .def_readonly("green_interval_count", &gapscan::ColoringReport::green_interval_count);

    py::class_<gapscan::Theorem1Report>(m, "Theorem1Report")
        .def_readonly("x", &gapscan::Theorem1Report::x)
        .def_readonly("k", &gapscan::Theorem1Report::k)
        .def_readonly("r", &gapscan::Theorem1Report::r)
        .def_readonly("r_within_paper_range", &gapscan::Theorem1Report::r_within_paper_range)
        .def_readonly("red_count", &gapscan::Theorem1Report::red_count)
        .def_readonly("green_count", &gapscan::Theorem1Report::green_count)
        .def_readonly("lemma1_ceiling", &gapscan::Theorem1Report::lemma1_ceiling)
        .def_readonly("red_ratio", &gapscan::Theorem1Report::red_ratio)
        .def_readonly("longest_green_run", &gapscan::Theorem1Report::longest_green_run)
        .def_readonly("run_meets_k", &gapscan::Theorem1Report::run_meets_k);

    py::class_<gapscan::GreenRunWitness>(m, "GreenRunWitness")
        .def_readonly("primes", &gapscan::GreenRunWitness::primes)
        .def_readonly("pairwise_ok", &gapscan::GreenRunWitness::pairwise_ok)
        .def_readonly("start_index", &gapscan::GreenRunWitness::start_index);

    py::class_<gapscan::Theorem6Result>(m, "Theorem6Result")
        .def_readonly("x", &gapscan::Theorem6Result::x)
        .def_readonly("t", &gapscan::Theorem6Result::t)
        .def_readonly("r", &gapscan::Theorem6Result::r)
        .def_readonly("degenerate", &gapscan::Theorem6Result::degenerate)
        .def_readonly("found", &gapscan::Theorem6Result::found)
        .def_readonly("witness", &gapscan::Theorem6Result::witness)
        .def_readonly("coloring", &gapscan::Theorem6Result::coloring);

    m.def("g_k", &gapscan::g_k, py::arg("table"), py::arg("x"), py::arg("k"));
    m.def("color_two", &gapscan::color_two, py::arg("table"), py::arg("x"), py::arg("r"));
    m.def("theorem1_report", &gapscan::theorem1_report, py::arg("table"), py::arg("x"), py::arg("k"),
          py::arg("precision_bits") = 192);
    m.def("square_diff_pairs", &gapscan::square_diff_pairs, py::arg("table"), py::arg("M"), py::arg("N"));
    m.def("color_three", &gapscan::color_three, py::arg("table"), py::arg("x"), py::arg("t"),
          py::arg("r"));
    m.def("theorem6_search", &gapscan::theorem6_search, py::arg("table"), py::arg("x"),
          py::arg("precision_bits") = 192);
    m.def("first_sdf_run", &gapscan::first_sdf_run, py::arg("table"), py::arg("x"),
          py::arg("run_length"));
    m.def("first_green_run", &gapscan::first_green_run, py::arg("table"), py::arg("report"),
          py::arg("run_length"));
    m.def("yellow_bound_check", &gapscan::yellow_bound_check, py::arg("report"));
}
