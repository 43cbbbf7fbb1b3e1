import pytest

from symred.chartable import Family
from symred.permgroup import close


def make_c2():
    return close(["(1,2)"]), Family(kind="cyclic", n=2)


def make_c2v():
    group = close(["[2,1,4,3]", "[1,2,4,3]", "[2,1,3,4]"])
    family = Family(kind="product", factors=(
        (Family(kind="cyclic", n=2), (1,)),
        (Family(kind="cyclic", n=2), (2,)),
    ))
    return group, family


def make_s3():
    return close(["(1,2,3)", "(1,2)"]), Family(kind="symmetric", n=3)


def make_d4():
    return close(["(1,2,3,4)", "(1,3)"]), Family(kind="dihedral", n=4)


GROUP_FACTORIES = {
    "C2": make_c2,
    "C2v": make_c2v,
    "S3": make_s3,
    "D4": make_d4,
}


@pytest.fixture(params=sorted(GROUP_FACTORIES))
def named_group(request):
    group, family = GROUP_FACTORIES[request.param]()
    return request.param, group, family
