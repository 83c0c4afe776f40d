import copy

import pytest

from fusionring import (
    FusionRuleTable,
    IncompleteTableError,
    table_from_ring,
    verify_fusion_rule_axioms,
)
from fusionring.serialize import rule_table_from_doc, rule_table_to_doc

from helpers import get_ring


def test_ring_table_passes():
    table = table_from_ring(get_ring("A1", 1), depth=5)
    report = verify_fusion_rule_axioms(table, depth=4)
    assert report.passed
    assert report.f0_ok and report.f1_ok and report.f2_ok
    assert report.kernel == ()
    assert report.unit == 0
    assert report.gorenstein_ok


@pytest.mark.parametrize("name,level", [("A1", 3), ("A2", 1), ("C2", 1), ("G2", 2)])
def test_more_ring_tables_pass(name, level):
    table = table_from_ring(get_ring(name, level), depth=5)
    assert verify_fusion_rule_axioms(table, depth=4).passed


def _a1_table():
    return table_from_ring(get_ring("A1", 1), depth=5)


def test_broken_two_point_value_reports_f2():
    table = _a1_table()
    broken = FusionRuleTable(
        labels=table.labels,
        involution=table.involution,
        depth=table.depth,
        values={**table.values, (1, 1): 2},
    )
    report = verify_fusion_rule_axioms(broken, depth=4)
    assert not report.passed
    assert not report.f2_ok
    assert ((1,), (1,)) in report.f2_failures
    assert not report.gorenstein_ok
    assert (1, 1) in report.gorenstein_failures


def test_extension_by_dead_symbol_lands_in_kernel():
    table = _a1_table()
    ghost = table.size
    broken = FusionRuleTable(
        labels=table.labels + ("ghost",),
        involution=table.involution + (ghost,),
        depth=table.depth,
        values=dict(table.values),
    )
    report = verify_fusion_rule_axioms(broken, depth=4)
    assert not report.passed
    assert report.kernel == (ghost,)
    assert not report.nondegenerate
    # The other axioms are untouched by a symbol that multiplies to zero.
    assert report.f0_ok and report.f1_ok and report.f2_ok


def test_incomplete_table_rejected():
    table = _a1_table()
    shallow = FusionRuleTable(
        labels=table.labels,
        involution=table.involution,
        depth=2,
        values={k: v for k, v in table.values.items() if len(k) <= 2},
    )
    with pytest.raises(IncompleteTableError):
        verify_fusion_rule_axioms(shallow, depth=4)


def test_rule_table_round_trip():
    table = _a1_table()
    doc = rule_table_to_doc(table)
    back = rule_table_from_doc(doc)
    assert back.labels == table.labels
    assert back.involution == table.involution
    assert back.depth == table.depth
    assert back.values == {k: v for k, v in table.values.items() if v}
