#include "entcost/types.hpp"

#include "entcost/linalg.hpp"

namespace entcost {

FormPair FormPair::standard(int modes) {
    return {linalg::standard_symplectic(modes), Matrix::Identity(2 * modes, 2 * modes)};
}

Matrix PartnerPair::basis() const {
    Matrix rows(4, mode.x.size());
    rows.row(0) = mode.x.transpose();
    rows.row(1) = mode.k.transpose();
    rows.row(2) = partner.x.transpose();
    rows.row(3) = partner.k.transpose();
    return rows;
}

}  // namespace entcost
