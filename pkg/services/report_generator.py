import io

from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER, TA_LEFT
from reportlab.lib.pagesizes import A4
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import inch
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

from services.graph_core import graph6_decode

STATUS_COLORS = {
    "equal": colors.HexColor('#2E7D32'),
    "different": colors.HexColor('#F44336'),
    "partial": colors.HexColor('#FF9800'),
}


class ReportGenerator:
    """Renders a characterisation check (``verify`` report) as a PDF."""

    def __init__(self):
        self.styles = getSampleStyleSheet()
        self._create_custom_styles()

    def _create_custom_styles(self):
        self.styles.add(ParagraphStyle(
            name='MainTitle',
            parent=self.styles['Heading1'],
            fontSize=18,
            textColor=colors.HexColor('#1A237E'),
            alignment=TA_CENTER,
            spaceAfter=12,
            fontName='Helvetica-Bold'
        ))

        self.styles.add(ParagraphStyle(
            name='SectionHeading',
            parent=self.styles['Heading2'],
            fontSize=12,
            textColor=colors.HexColor('#283593'),
            spaceBefore=8,
            spaceAfter=4,
            fontName='Helvetica-Bold',
            leftIndent=0
        ))

        self.styles.add(ParagraphStyle(
            name='Label',
            parent=self.styles['Normal'],
            fontSize=10,
            textColor=colors.HexColor('#333333'),
            fontName='Helvetica-Bold',
            alignment=TA_LEFT
        ))

        self.styles.add(ParagraphStyle(
            name='SmallNormal',
            parent=self.styles['Normal'],
            fontSize=10,
            textColor=colors.HexColor('#333333'),
            spaceAfter=2,
            leading=12
        ))

        self.styles.add(ParagraphStyle(
            name='Footer',
            parent=self.styles['Normal'],
            fontSize=8,
            textColor=colors.HexColor('#666666'),
            alignment=TA_CENTER,
            spaceAfter=1
        ))

    def _key_value_table(self, rows, value_color=None):
        table = Table(rows, colWidths=[1.8 * inch, 4 * inch])
        style = [
            ('FONTNAME', (0, 0), (0, -1), 'Helvetica-Bold'),
            ('FONTNAME', (1, 0), (1, -1), 'Helvetica'),
            ('FONTSIZE', (0, 0), (-1, -1), 10),
            ('VALIGN', (0, 0), (-1, -1), 'TOP'),
            ('BOTTOMPADDING', (0, 0), (-1, -1), 2),
        ]
        if value_color is not None:
            style.append(('TEXTCOLOR', (1, 0), (1, 0), value_color))
        table.setStyle(TableStyle(style))
        return table

    def _graph_table(self, codes):
        rows = [["graph6", "Vertices", "Edges", "Degree sequence"]]
        for code in codes:
            g = graph6_decode(code)
            rows.append([code, str(g.vertex_count), str(g.edge_count),
                         " ".join(str(d) for d in g.degree_sequence() if d)])
        table = Table(rows, colWidths=[1.6 * inch, 0.9 * inch, 0.7 * inch, 2.6 * inch])
        table.setStyle(TableStyle([
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('FONTNAME', (0, 1), (0, -1), 'Courier'),
            ('FONTSIZE', (0, 0), (-1, -1), 9),
            ('BACKGROUND', (0, 0), (-1, 0), colors.HexColor('#E8EAF6')),
            ('GRID', (0, 0), (-1, -1), 0.5, colors.HexColor('#CCCCCC')),
        ]))
        return table

    def generate_report(self, report):
        """Build the PDF for a ``verify`` report dict; returns a rewound BytesIO."""
        buffer = io.BytesIO()
        doc = SimpleDocTemplate(
            buffer,
            pagesize=A4,
            rightMargin=50,
            leftMargin=50,
            topMargin=40,
            bottomMargin=40,
        )
        story = []

        story.append(Paragraph("SIZE RAMSEY CHARACTERISATION CHECK", self.styles['MainTitle']))
        story.append(Spacer(1, 0.1 * inch))

        # ===== 1. INSTANCE =====
        story.append(Paragraph("1. INSTANCE", self.styles['SectionHeading']))
        instance_rows = [[f"F{i + 1}:", forest] for i, forest in enumerate(report["forests"])]
        instance_rows += [
            ["Covered by:", report["covered_by"]],
            ["Provenance:", report["provenance"]],
            ["Forests exchanged:", "yes" if report.get("mirrored") else "no"],
        ]
        story.append(self._key_value_table(instance_rows))

        # ===== 2. VALUES =====
        story.append(Paragraph("2. VALUES", self.styles['SectionHeading']))
        value_rows = [
            ["l-sequence:", ", ".join(str(v) for v in report.get("l_sequence", []))],
            ["Predicted value:", str(report["predicted_value"])],
            ["Exhaustive value:", "not found" if report["value"] is None else str(report["value"])],
            ["Proven lower bound:", str(report.get("lower_bound", "-"))],
            ["Searched up to:", f"{report.get('max_edges', '-')} edges"],
        ]
        story.append(self._key_value_table(value_rows))

        # ===== 3. MINIMAL GRAPHS =====
        story.append(Paragraph("3. PREDICTED MINIMAL GRAPHS", self.styles['SectionHeading']))
        story.append(self._graph_table(report["predicted"]))
        story.append(Paragraph("4. MINIMAL GRAPHS FOUND", self.styles['SectionHeading']))
        story.append(self._graph_table(report["minimal_graphs"]))

        # ===== VERDICT =====
        story.append(Paragraph("VERDICT", self.styles['SectionHeading']))
        status = report["status"]
        story.append(self._key_value_table([["Status:", status.upper()]],
                                           STATUS_COLORS.get(status)))
        for label, key in (("Missing", "missing"), ("Unexpected", "unexpected")):
            if report[key]:
                story.append(Paragraph(f"• {label}: {', '.join(report[key])}",
                                       self.styles['SmallNormal']))

        story.append(Spacer(1, 0.15 * inch))
        story.append(Paragraph("Generated by srn verify", self.styles['Footer']))

        doc.build(story)
        buffer.seek(0)
        return buffer
