# -*- coding: utf-8 -*-
"""
报告归档表 billiard_report 的增删查 (使用 psycopg3)

    report_id  SERIAL 主键
    command    生成报告的命令
    schema     报告格式版本
    seed       随机种子（没有时为 NULL）
    created    入库时间
    body       报告正文（规范化 JSON 文本）
"""

import json
import logging
from datetime import datetime

import psycopg

from billiards.errors import ArchiveError

_logger = logging.getLogger(__name__)

CREATE_TABLE = """
    CREATE TABLE IF NOT EXISTS billiard_report (
        report_id SERIAL PRIMARY KEY,
        command   VARCHAR(32) NOT NULL,
        schema    VARCHAR(64) NOT NULL,
        seed      BIGINT,
        created   TIMESTAMP NOT NULL,
        body      TEXT NOT NULL
    )
"""


def _fail(connection, action, error):
    connection.rollback()
    raise ArchiveError(f"{action}时发生错误: {error}")


def ensure_schema(connection):
    """创建归档表（已存在时不做任何事）"""
    try:
        with connection.cursor() as cursor:
            cursor.execute(CREATE_TABLE)
        connection.commit()
    except psycopg.Error as e:
        _fail(connection, "建表", e)


def store_report(connection, report):
    """
    写入一份报告

    Args:
        connection: psycopg3 数据库连接
        report (dict): emit_report 使用的报告文档

    Returns:
        int: 新记录的 report_id

    Raises:
        ArchiveError: 写入失败
    """
    body = json.dumps(report, sort_keys=True, ensure_ascii=False)
    try:
        with connection.cursor() as cursor:
            cursor.execute("""
                INSERT INTO billiard_report (command, schema, seed, created, body)
                VALUES (%s, %s, %s, %s, %s)
                RETURNING report_id
            """, (report.get('command'), report.get('schema'), report.get('seed'), datetime.now(), body))
            report_id = cursor.fetchone()[0]
        connection.commit()
    except psycopg.Error as e:
        _fail(connection, "写入报告", e)
    _logger.info("报告已归档: report_id = %d", report_id)
    return report_id


def fetch_report(connection, report_id):
    """
    读取一份报告

    Returns:
        dict | None: 报告文档，不存在时为 None
    """
    try:
        with connection.cursor() as cursor:
            cursor.execute("SELECT body FROM billiard_report WHERE report_id = %s", (report_id,))
            row = cursor.fetchone()
    except psycopg.Error as e:
        _fail(connection, "读取报告", e)
    return json.loads(row[0]) if row else None


def list_reports(connection, command=None):
    """
    列出归档记录

    Args:
        command (str): 只列出该命令的报告

    Returns:
        list: (report_id, command, seed, created) 元组，按 report_id 升序
    """
    query = "SELECT report_id, command, seed, created FROM billiard_report"
    args = ()
    if command:
        query += " WHERE command = %s"
        args = (command,)
    query += " ORDER BY report_id"
    try:
        with connection.cursor() as cursor:
            cursor.execute(query, args)
            return cursor.fetchall()
    except psycopg.Error as e:
        _fail(connection, "查询报告列表", e)


def delete_report(connection, report_id):
    """
    删除一份报告

    Returns:
        bool: 是否删除了记录
    """
    try:
        with connection.cursor() as cursor:
            cursor.execute("DELETE FROM billiard_report WHERE report_id = %s", (report_id,))
            deleted = cursor.rowcount > 0
        if deleted:
            connection.commit()
        else:
            # 没有匹配的记录，结束事务
            connection.rollback()
        return deleted
    except psycopg.Error as e:
        _fail(connection, "删除报告", e)
