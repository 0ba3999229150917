/** Server-side SVG rendering of figure data via echarts. */

import * as echarts from "echarts";

import { FigureData } from "./figures.js";

export function renderSvg(fig: FigureData, width = 860, height = 560): string {
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width,
    height,
  });
  try {
    chart.setOption({
      animation: false,
      title: { text: fig.title, left: "center" },
      legend: { bottom: 0, data: fig.series.map((s) => s.name) },
      grid: { left: 70, right: 30, top: 50, bottom: 80 },
      xAxis: {
        type: "value",
        name: fig.xLabel,
        nameLocation: "middle",
        nameGap: 28,
      },
      yAxis: {
        type: fig.logY ? "log" : "value",
        name: fig.yLabel,
        nameLocation: "middle",
        nameGap: 48,
      },
      series: fig.series.map((s) => ({
        name: s.name,
        type: s.kind === "line" ? "line" : "scatter",
        data: s.points,
        ...(s.kind === "line" ? { showSymbol: false } : { symbolSize: 7 }),
      })),
    });
    return chart.renderToSVGString();
  } finally {
    chart.dispose();
  }
}
