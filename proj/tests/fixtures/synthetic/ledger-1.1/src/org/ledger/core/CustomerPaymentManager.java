package org.ledger.core;

/** Handles audit report channel. */
public class CustomerPaymentManager {
  private int streamAudit;
  public void streamConfig() { channelExport.reportExport(); }
  public void exportAudit() { reportChannel.auditChannel(); }
  public void auditStream() { reportExport.streamConfig(); }
}
