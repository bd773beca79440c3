"""
Report output: CSV (comma separated, header row, LF endings), compact JSON
through DRF's JSONRenderer, or an aligned text table.
"""
import csv
import io

from rest_framework.renderers import JSONRenderer


def render_csv(rows, fieldnames):
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator='\n', extrasaction='ignore')
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def render_json(data):
    return JSONRenderer().render(data).decode() + '\n'


def render_pretty(rows, fieldnames):
    table = [list(fieldnames)] + [[str(row.get(name, '')) for name in fieldnames] for row in rows]
    widths = [max(len(line[col]) for line in table) for col in range(len(fieldnames))]
    lines = ['  '.join(cell.rjust(width) for cell, width in zip(line, widths)) for line in table]
    lines.insert(1, '  '.join('-' * width for width in widths))
    return '\n'.join(lines) + '\n'


def render(output, rows=None, fieldnames=None, data=None):
    """
    Args:
        output: 'csv', 'json' or 'pretty'
        rows, fieldnames: tabular form, used by csv and pretty
        data: JSON form; defaults to the rows
    """
    if output == 'json':
        return render_json(data if data is not None else rows)
    if output == 'pretty':
        return render_pretty(rows or [], fieldnames)
    return render_csv(rows or [], fieldnames)
