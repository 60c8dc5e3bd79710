#pragma once

#include "gcx/category.hpp"

#include <string>
#include <vector>

namespace gcx {

struct AxiomEntry {
    std::string axiom;
    std::vector<std::string> instance;
    CycNumber lhs;
    CycNumber rhs;
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomEntry> failures;
    long checked = 0;

    bool ok() const { return failures.empty(); }
    void expect(const std::string& axiom, std::vector<std::string> instance, const CycNumber& lhs,
                const CycNumber& rhs);
    void fail(const std::string& axiom, std::vector<std::string> instance, const CycNumber& lhs, const CycNumber& rhs);
    void fail_detail(const std::string& axiom, std::vector<std::string> instance, const std::string& detail);
    void merge(const AxiomReport& o);
    void sort();
    std::string str() const;
};

AxiomReport check_pivotal(const CategoryData& c);
AxiomReport check_crossing(const CategoryData& c);
AxiomReport check_braiding(const CategoryData& c);
AxiomReport check_ribbon(const CategoryData& c);
// lemma-level consequences: inverse braiding forms, twist lemmas, psi transforms
AxiomReport check_derived(const CategoryData& c);

}  // namespace gcx
