"""Shared fixtures: the three reference instances, built once per session."""

from fractions import Fraction

import pytest

from orbitcodes.instance import InstanceConfig, build_instance


@pytest.fixture(scope="session")
def inst1_p2():
    return build_instance(InstanceConfig("I", 2, 2, r=Fraction(1, 2)))


@pytest.fixture(scope="session")
def inst1_p3():
    return build_instance(InstanceConfig("I", 3, 2, r=Fraction(1, 2)))


@pytest.fixture(scope="session")
def inst2_p2():
    return build_instance(InstanceConfig("II", 2, 2, r=Fraction(1, 2), gamma=Fraction(1)))


@pytest.fixture(scope="session")
def all_instances(inst1_p2, inst1_p3, inst2_p2):
    return [inst1_p2, inst1_p3, inst2_p2]
