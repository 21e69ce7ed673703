from fastmcp import Client

from noma_relay.server import mcp


async def call(tool, **arguments):
    async with Client(mcp) as client:
        result = await client.call_tool(tool, arguments)
    return result.content[0].text


async def test_tools_are_registered():
    async with Client(mcp) as client:
        names = {tool.name for tool in await client.list_tools()}
    assert {
        "list_metrics",
        "describe_thresholds",
        "evaluate_metric",
        "list_figures",
        "reproduce_figure",
        "validate_formulas",
    } <= names


async def test_list_metrics():
    text = await call("list_metrics")
    assert "outage_d2_dir_gc" in text
    assert "ee_tolerant_asym" in text


async def test_describe_thresholds():
    text = await call("describe_thresholds", scenario="nodir", snr_db=0.0, duplex="FD")
    assert "gamma_th1: 7" in text
    assert "theta: 35" in text


async def test_evaluate_metric_analytic_and_simulated():
    text = await call("evaluate_metric", metric="outage_d1", snr_db=20.0)
    assert "analytic" in text and "monte carlo" not in text

    text = await call(
        "evaluate_metric",
        metric="rate_d2_dir",
        snr_db=20.0,
        scenario="dir",
        mc_samples=5000,
        seed=1,
    )
    assert "monte carlo" in text
    assert "5000 samples" in text


async def test_evaluate_metric_reports_errors():
    text = await call("evaluate_metric", metric="goodput", snr_db=20.0)
    assert text.startswith("❌")
    text = await call("evaluate_metric", metric="rate_d1", snr_db=20.0, scenario="relay")
    assert text.startswith("❌")


async def test_list_figures():
    text = await call("list_figures")
    assert "fig2:" in text and "fig10:" in text


async def test_reproduce_figure_returns_csv():
    text = await call("reproduce_figure", figure_id="fig4", mc_samples=1000, seed=2)
    assert text.splitlines()[0] == "snr_db,metric,analytic,mc_mean,mc_se,method,samples"
    assert "sum_rate@HD" in text

    text = await call("reproduce_figure", figure_id="fig99")
    assert text.startswith("❌")


async def test_validate_formulas():
    text = await call("validate_formulas", samples=20000, seed=1, grid="10,30", sigma=5.0)
    assert text.startswith("✅")
