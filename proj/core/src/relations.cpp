#include "cclab/relations.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cclab/errors.hpp"
#include "cclab/exact.hpp"

namespace cclab {

namespace {

std::string entry_witness(const Relation& rel, std::size_t i, std::size_t j) {
    return rel.name() + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

} // namespace

FibrePartition FibrePartition::from_sizes(std::vector<std::size_t> sizes) {
    if (sizes.empty()) throw StructuralError("fibre partition needs at least one fibre");
    FibrePartition fp;
    fp.sizes = std::move(sizes);
    fp.offsets.resize(fp.sizes.size());
    std::size_t off = 0;
    for (std::size_t i = 0; i < fp.sizes.size(); ++i) {
        if (fp.sizes[i] == 0) throw StructuralError("fibre sizes must be positive");
        fp.offsets[i] = off;
        off += fp.sizes[i];
    }
    return fp;
}

std::size_t FibrePartition::ground_size() const {
    std::size_t total = 0;
    for (std::size_t s : sizes) total += s;
    return total;
}

std::string Relation::name() const {
    return "A[" + std::to_string(source) + "," + std::to_string(target) + ";" +
           std::to_string(index) + "]";
}

CoherentConfig::CoherentConfig(FibrePartition fibres, std::vector<Relation> relations)
    : fibres_(std::move(fibres)), relations_(std::move(relations)) {
    if (fibres_.offsets.empty()) fibres_ = FibrePartition::from_sizes(fibres_.sizes);
    std::stable_sort(relations_.begin(), relations_.end(), [](const Relation& a, const Relation& b) {
        return std::tie(a.source, a.target, a.index) < std::tie(b.source, b.target, b.index);
    });

    const std::size_t f = fibres_.count();
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> indices;
    for (const Relation& rel : relations_) {
        if (rel.source >= f || rel.target >= f) {
            throw StructuralError(rel.name() + ": fibre index out of range");
        }
        const std::size_t want_rows = fibres_.sizes[rel.source];
        const std::size_t want_cols = fibres_.sizes[rel.target];
        if (rel.matrix.rows() != want_rows || rel.matrix.cols() != want_cols) {
            throw StructuralError(rel.name() + ": shape " + rel.matrix.shape_string() +
                                  " does not match fibres (" + std::to_string(want_rows) + "x" +
                                  std::to_string(want_cols) + ")");
        }
        if (!rel.matrix.is_binary()) {
            throw StructuralError(rel.name() + ": entries must be 0 or 1");
        }
        indices[{rel.source, rel.target}].push_back(rel.index);
    }
    for (const auto& [blk, idx] : indices) {
        const std::size_t start = blk.first == blk.second ? 0 : 1;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (idx[k] != start + k) {
                throw StructuralError("block (" + std::to_string(blk.first) + "," +
                                      std::to_string(blk.second) +
                                      "): relation indices must run contiguously from " +
                                      std::to_string(start));
            }
        }
    }
}

std::size_t CoherentConfig::block_count(std::size_t i, std::size_t j) const {
    std::size_t t = 0;
    for (const Relation& rel : relations_) {
        if (rel.source == i && rel.target == j) t = std::max(t, rel.index);
    }
    return t;
}

std::vector<const Relation*> CoherentConfig::block(std::size_t i, std::size_t j) const {
    std::vector<const Relation*> out;
    for (const Relation& rel : relations_) {
        if (rel.source == i && rel.target == j) out.push_back(&rel);
    }
    return out;
}

const Relation* CoherentConfig::find(std::size_t i, std::size_t j, std::size_t index) const {
    for (const Relation& rel : relations_) {
        if (rel.source == i && rel.target == j && rel.index == index) return &rel;
    }
    return nullptr;
}

bool VerificationReport::pass() const {
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

const CheckResult* VerificationReport::find(std::string_view condition) const {
    for (const CheckResult& c : checks)
        if (c.condition == condition) return &c;
    return nullptr;
}

bool TypeMatrix::is_symmetric() const {
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::size_t j = i + 1; j < counts.size(); ++j)
            if (counts[i][j] != counts[j][i]) return false;
    return true;
}

std::string TypeMatrix::symbol() const {
    std::string s = "(";
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i > 0) s += "; ";
        for (std::size_t j = i; j < counts.size(); ++j) {
            if (j > i) s += " ";
            s += std::to_string(counts[i][j]);
        }
    }
    return s + ")";
}

VerificationReport verify_axioms(const CoherentConfig& cc, const Tolerance&) {
    VerificationReport report;
    const std::size_t f = cc.fibres().count();

    // A1: each diagonal block carries the identity at index 0.
    {
        CheckResult a1{"A1", true, "", 0.0};
        for (std::size_t i = 0; i < f && a1.pass; ++i) {
            const Relation* rel = cc.find(i, i, 0);
            if (!rel) {
                a1.pass = false;
                a1.witness = "fibre " + std::to_string(i) + " has no identity relation";
                break;
            }
            const Matrix id = Matrix::identity(cc.fibres().sizes[i]);
            for (std::size_t r = 0; r < id.rows() && a1.pass; ++r) {
                for (std::size_t c = 0; c < id.cols(); ++c) {
                    if (rel->matrix(r, c) != id(r, c)) {
                        a1.pass = false;
                        a1.witness = entry_witness(*rel, r, c);
                        break;
                    }
                }
            }
        }
        report.checks.push_back(std::move(a1));
    }

    // A2: within each block the relations are Schur-orthogonal and sum to J.
    {
        CheckResult a2{"A2", true, "", 0.0};
        for (std::size_t i = 0; i < f && a2.pass; ++i) {
            for (std::size_t j = 0; j < f && a2.pass; ++j) {
                const auto rels = cc.block(i, j);
                if (rels.empty()) {
                    a2.pass = false;
                    a2.witness = "block (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") has no relations";
                    break;
                }
                Matrix sum(cc.fibres().sizes[i], cc.fibres().sizes[j]);
                for (const Relation* rel : rels) sum += rel->matrix;
                for (std::size_t r = 0; r < sum.rows() && a2.pass; ++r) {
                    for (std::size_t c = 0; c < sum.cols(); ++c) {
                        if (sum(r, c) != 1.0) {
                            a2.pass = false;
                            a2.witness = "block (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") sums to " +
                                         std::to_string(static_cast<long long>(sum(r, c))) +
                                         " at (" + std::to_string(r) + "," + std::to_string(c) +
                                         ")";
                            break;
                        }
                    }
                }
            }
        }
        report.checks.push_back(std::move(a2));
    }

    // A3: the transpose of every relation matrix appears in the transposed
    // block.
    {
        CheckResult a3{"A3", true, "", 0.0};
        const auto partners = transpose_closure_map(cc);
        for (std::size_t k = 0; k < partners.size(); ++k) {
            if (!partners[k]) {
                a3.pass = false;
                a3.witness = cc.relations()[k].name() + " has no transpose partner";
                break;
            }
        }
        report.checks.push_back(std::move(a3));
    }

    // A4: every composable product lies in the exact integer span of the
    // target block's relations.
    {
        CheckResult a4{"A4", true, "", 0.0};
        for (std::size_t i = 0; i < f && a4.pass; ++i) {
            for (std::size_t h = 0; h < f && a4.pass; ++h) {
                ExactSpan span;
                for (const Relation* rel : cc.block(i, h)) span.add(flatten_integral(rel->matrix));
                for (std::size_t j = 0; j < f && a4.pass; ++j) {
                    for (const Relation* left : cc.block(i, j)) {
                        for (const Relation* right : cc.block(j, h)) {
                            const Matrix prod = left->matrix * right->matrix;
                            if (span.add(flatten_integral(prod))) {
                                a4.pass = false;
                                a4.witness = "product " + left->name() + " * " + right->name() +
                                             " escapes the span of block (" + std::to_string(i) +
                                             "," + std::to_string(h) + ")";
                                break;
                            }
                        }
                        if (!a4.pass) break;
                    }
                }
            }
        }
        report.checks.push_back(std::move(a4));
    }

    return report;
}

bool is_fibre_symmetric(const CoherentConfig& cc) {
    for (const Relation& rel : cc.relations()) {
        if (rel.source == rel.target && !rel.matrix.is_symmetric(0.0)) return false;
    }
    return true;
}

TypeMatrix type_of(const CoherentConfig& cc) {
    const std::size_t f = cc.fibres().count();
    TypeMatrix tm;
    tm.counts.assign(f, std::vector<std::size_t>(f, 0));
    for (std::size_t i = 0; i < f; ++i)
        for (std::size_t j = 0; j < f; ++j) tm.counts[i][j] = cc.block(i, j).size();
    return tm;
}

std::vector<std::optional<std::size_t>> transpose_closure_map(const CoherentConfig& cc) {
    const auto& rels = cc.relations();
    std::vector<std::optional<std::size_t>> partners(rels.size());
    for (std::size_t k = 0; k < rels.size(); ++k) {
        const Matrix t = rels[k].matrix.transpose();
        for (std::size_t m = 0; m < rels.size(); ++m) {
            if (rels[m].source == rels[k].target && rels[m].target == rels[k].source &&
                rels[m].matrix == t) {
                partners[k] = m;
                break;
            }
        }
    }
    return partners;
}

} // namespace cclab
