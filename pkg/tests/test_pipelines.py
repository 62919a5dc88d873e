import pytest

from travlab.families import short_encoding_structures
from travlab.machines import block_count_machine, bounce_machine, parity_machine, run_machine
from travlab.pipelines import (
    PipelineError, configuration_structure, encode_input, pipeline_L, pipeline_NL,
)
from travlab.structures import LinearOrder, Signature, Structure

P = Signature({"P": 1})


def unary(n, members):
    return Structure(P, n, {"P": [(a,) for a in members]})


def test_encode_input_orders():
    A = unary(3, [0])
    assert encode_input(A) == "111#100"
    assert encode_input(A, LinearOrder.from_sequence([2, 1, 0])) == "111#001"


@pytest.mark.parametrize("members", [[], [0], [0, 1], [0, 1, 2]])
def test_nl_pipeline_on_parity(members):
    A = unary(3, members)
    result = pipeline_NL(parity_machine(), A)
    assert result.agrees
    assert bool(result) == (encode_input(A).count("1") % 2 == 0)


def test_nl_pipeline_on_block_count():
    A = Structure(Signature({"P": 1, "Q": 1}), 1, {"P": [(0,)], "Q": []})
    result = pipeline_NL(block_count_machine(), A)
    assert result.encoding == "1#1#0" and result.verdict and result.agrees


@pytest.mark.parametrize("toggle", ["#", "0"])
def test_l_pipeline_on_symmetric_machine(toggle):
    m = bounce_machine(toggle)
    for A in short_encoding_structures(3, 5):
        result = pipeline_L(m, A)
        assert result.agrees
        assert result.verdict == (toggle in result.encoding)


def test_l_pipeline_rejects_asymmetric_machine():
    with pytest.raises(PipelineError, match="not symmetric"):
        pipeline_L(parity_machine(), unary(3, [1]))


def test_short_inputs_are_rejected():
    with pytest.raises(PipelineError, match="too short"):
        pipeline_NL(parity_machine(), Structure(Signature(), 2))
    with pytest.raises(PipelineError, match="too short"):
        configuration_structure(bounce_machine(), "1")


def test_verdict_ignores_the_order_on_relational_inputs():
    m = parity_machine()
    for A in short_encoding_structures(3, 6):
        seqs = [list(range(A.size)), list(reversed(range(A.size)))]
        verdicts = {pipeline_NL(m, A, LinearOrder.from_sequence(s)).verdict for s in seqs}
        assert len(verdicts) == 1
        assert verdicts == {run_machine(m, encode_input(A))}


def test_foreign_symbols_are_rejected():
    with pytest.raises(PipelineError, match="alphabet"):
        configuration_structure(parity_machine(), "0a1")
