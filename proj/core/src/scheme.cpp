#include "cclab/scheme.hpp"

#include <cmath>
#include <string>

#include "cclab/eigen.hpp"
#include "cclab/errors.hpp"
#include "cclab/parameters.hpp"

namespace cclab {

SchemeSystem scheme_system(const CoherentConfig& cc, const Tolerance& tol) {
    if (cc.fibres().count() != 1) {
        throw StructuralError("scheme_system expects a one-fibre configuration");
    }
    for (const Relation& rel : cc.relations()) {
        if (!rel.matrix.is_symmetric(0.0)) {
            throw StructuralError("scheme_system: relation " + rel.name() +
                                  " is not symmetric; the configuration is not fibre-symmetric");
        }
    }

    std::vector<Matrix> family;
    for (const Relation& rel : cc.relations()) family.push_back(rel.matrix);
    const EigenDecomposition dec = common_eigen(family, tol);

    if (dec.spaces.size() != cc.relations().size()) {
        throw BuildError("scheme_system: " + std::to_string(dec.spaces.size()) +
                         " common eigenspaces for " + std::to_string(cc.relations().size()) +
                         " relations; the spectral idempotents do not form a basis");
    }

    SchemeSystem ss;
    const std::size_t count = dec.spaces.size();
    ss.P = Matrix(count, count);
    for (std::size_t r = 0; r < count; ++r) {
        ss.idempotents.push_back(dec.spaces[r].projector);
        ss.multiplicities.push_back(static_cast<double>(dec.spaces[r].multiplicity));
        for (std::size_t i = 0; i < count; ++i) ss.P(r, i) = dec.spaces[r].values[i];
    }
    for (const Relation& rel : cc.relations()) ss.valencies.push_back(rel.matrix.row_sum(0));

    const double n = static_cast<double>(cc.fibres().ground_size());
    ss.Q = n * invert(ss.P, "P");
    return ss;
}

double& SchemeTables::at(std::vector<double>& cube, std::size_t i, std::size_t j,
                         std::size_t h) {
    return cube[(i * size + j) * size + h];
}

double SchemeTables::formula_at(std::size_t i, std::size_t j, std::size_t h) const {
    return formula[(i * size + j) * size + h];
}

double SchemeTables::oracle_at(std::size_t i, std::size_t j, std::size_t h) const {
    return oracle[(i * size + j) * size + h];
}

SchemeTables scheme_intersection(const CoherentConfig& cc, const SchemeSystem& ss,
                                 double int_tol) {
    SchemeTables tables;
    const std::size_t count = cc.relations().size();
    const double n = static_cast<double>(cc.fibres().ground_size());
    tables.size = count;
    tables.formula.assign(count * count * count, 0.0);
    tables.oracle.assign(count * count * count, 0.0);

    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            // Oracle: read the coefficient of A_i A_j on each relation's
            // support; the coefficient must be constant over the support.
            const Matrix prod = cc.relations()[i].matrix * cc.relations()[j].matrix;
            for (std::size_t h = 0; h < count; ++h) {
                const Matrix& target = cc.relations()[h].matrix;
                double coeff = 0.0;
                bool found = false;
                for (std::size_t r = 0; r < prod.rows(); ++r) {
                    for (std::size_t c = 0; c < prod.cols(); ++c) {
                        if (target(r, c) != 1.0) continue;
                        if (!found) {
                            coeff = prod(r, c);
                            found = true;
                        } else if (prod(r, c) != coeff) {
                            tables.defects.push_back(
                                "A[" + std::to_string(i) + "]A[" + std::to_string(j) +
                                "] is not constant on relation " + std::to_string(h));
                            r = prod.rows();
                            break;
                        }
                    }
                }
                tables.at(tables.oracle, i, j, h) = coeff;

                double sum = 0.0;
                for (std::size_t r = 0; r < count; ++r)
                    sum += ss.multiplicities[r] * ss.P(r, i) * ss.P(r, j) * ss.P(r, h);
                const double value = sum / (n * ss.valencies[h]);
                const double rounded = std::round(value);
                tables.max_round_residual =
                    std::max(tables.max_round_residual, std::abs(value - rounded));
                if (std::abs(value - rounded) > int_tol) {
                    tables.defects.push_back("p(" + std::to_string(i) + "," +
                                             std::to_string(j) + ";" + std::to_string(h) +
                                             ") = " + std::to_string(value) +
                                             " is not an integer");
                    tables.at(tables.formula, i, j, h) = value;
                } else {
                    tables.at(tables.formula, i, j, h) = rounded;
                }
            }
        }
    }
    return tables;
}

double SchemeKrein::at(std::size_t i, std::size_t j, std::size_t h) const {
    return values[(i * size + j) * size + h];
}

SchemeKrein scheme_krein(const SchemeSystem& ss, std::size_t ground_size) {
    SchemeKrein kr;
    const std::size_t count = ss.idempotents.size();
    const double n = static_cast<double>(ground_size);
    kr.size = count;
    kr.values.assign(count * count * count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            const Matrix schur = ss.idempotents[i].schur(ss.idempotents[j]);
            for (std::size_t h = 0; h < count; ++h) {
                double sum = 0.0;
                for (std::size_t l = 0; l < count; ++l)
                    sum += ss.Q(l, h) * ss.Q(l, i) * ss.Q(l, j) * ss.valencies[l];
                const double formula = sum / (n * ss.multiplicities[h]);
                const double direct =
                    n * (schur * ss.idempotents[h]).trace() / ss.multiplicities[h];
                kr.values[(i * count + j) * count + h] = formula;
                kr.cross_check_residual =
                    std::max(kr.cross_check_residual, std::abs(formula - direct));
            }
        }
    }
    return kr;
}

} // namespace cclab
